"""Littlewood-Richardson coefficients by tableau enumeration."""

from __future__ import annotations

from functools import lru_cache

from .combinatorics import partition


def _contains(big, small) -> bool:
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


@lru_cache(maxsize=200_000)
def _lr(lam: tuple, mu: tuple, nu: tuple) -> int:
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if not (_contains(lam, mu) and _contains(lam, nu)):
        return 0
    if not nu:
        return 1 if lam == mu else 0
    k = len(nu)
    mu_p = mu + (0,) * (len(lam) - len(mu))
    rows = len(lam)

    # Fill the skew shape lam/mu row by row.  A row is weakly increasing, so
    # it is fixed by how many of each letter it holds.  ``above`` is the
    # previous row's filling as {column: letter}.
    def fill(i, totals, above):
        if i == rows:
            return 1 if totals == nu else 0
        start, stop = mu_p[i], lam[i]
        width = stop - start
        count = 0
        # choose counts for letters k..1 (read right to left = largest first)
        row = [0] * k

        def choose(letter, left):
            nonlocal count
            if letter < 0:
                if left:
                    return
                cells = []
                for j in range(k):
                    cells += [j + 1] * row[j]
                # column strictness against the row above
                for offset, val in enumerate(cells):
                    col = start + offset
                    if col in above and above[col] >= val:
                        return
                new_totals = tuple(t + c for t, c in zip(totals, row))
                count += fill(i + 1, new_totals, {start + o: v for o, v in enumerate(cells)})
                return
            cap = nu[letter] - totals[letter]
            if letter > 0:
                # lattice condition after reading this row's copies of letter+1
                cap = min(cap, totals[letter - 1] - totals[letter])
            # a letter larger than i+1 can never sit in row i of an LR filling
            if letter > i:
                cap = 0
            for c in range(min(cap, left), -1, -1):
                row[letter] = c
                choose(letter - 1, left - c)
            row[letter] = 0

        choose(k - 1, width)
        return count

    return fill(0, (0,) * k, {})


def lr_coefficient(lam, mu, nu) -> int:
    """Multiplicity c^lam_{mu,nu} of s_lam in s_mu * s_nu."""
    return _lr(partition(lam), partition(mu), partition(nu))


def tensor_multiplicity_gl(r: int, nu, mu, lam) -> int:
    """Multiplicity of the GL_r module ``nu`` in ``mu`` (x) ``lam``.

    Weights are dominant integer vectors of length r and may be negative;
    they are shifted by powers of the determinant until they are partitions.
    """
    nu, mu, lam = (tuple(int(x) for x in w) for w in (nu, mu, lam))
    if not (len(nu) == len(mu) == len(lam) == r):
        raise ValueError(f"GL_{r} weights must have {r} entries")
    if r == 0:
        return 1
    if sum(nu) != sum(mu) + sum(lam):
        return 0
    a, b = mu[-1], lam[-1]
    mu_s = tuple(x - a for x in mu)
    lam_s = tuple(x - b for x in lam)
    nu_s = tuple(x - a - b for x in nu)
    if nu_s[-1] < 0:
        return 0
    return _lr(partition(nu_s), partition(mu_s), partition(lam_s))
