"""Exact combinatorics of plane curve germs: divides, vanishing cycles,
monodromy invariants, partition strata and symbolic decomposition reports."""

from .branches import (
    BranchSpec,
    GermSpec,
    PuiseuxCharacteristic,
    TruncatedSeries,
    germ_invariants,
    intersection_multiplicity,
    semigroup_and_delta,
)
from .divide import Divide, dynkin_graph, intersection_form, validate
from .generators import generate_grid_divide, generate_line_arrangement_divide
from .lattice import (
    IntMatrix,
    enumerate_quotient,
    kernel_of_hom_on_subgroup,
    smith_normal_form,
    subgroup_quotient_order,
)
from .monodromy import picard_lefschetz, radical, sp_fullness_evidence, symplectic_quotient
from .partitions import BranchPartition, enumerate_partitions
from .report import decompose, homology_limit_report
from .strata import atomic_classes, class_sum, stratum_multiplicity, stratum_record

__version__ = "0.1.0"
