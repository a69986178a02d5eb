"""Pure-Python residue enumeration, used when the compiled core is absent."""


def residue_codes(basis, n, m):
    """All residues ``sum a_k basis[k] mod n`` with ``0 <= a_k < n``.

    Each residue vector ``v`` is encoded as ``sum v_j n^j``.  Entries of
    ``basis`` must already be reduced mod ``n``.
    """
    k = len(basis)
    vec = [0] * m
    coeffs = [0] * k
    weights = [n**j for j in range(m)]
    seen = {0}
    while True:
        pos = 0
        while pos < k:
            g = basis[pos]
            for j in range(m):
                vec[j] = (vec[j] + g[j]) % n
            coeffs[pos] += 1
            if coeffs[pos] < n:
                break
            # n copies of a generator vanish mod n, so vec is back where it was
            coeffs[pos] = 0
            pos += 1
        if pos == k:
            return seen
        seen.add(sum(v * w for v, w in zip(vec, weights)))
