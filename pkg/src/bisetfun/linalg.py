"""Exact dense linear algebra over Fraction or cyclotomic entries.

Everything here works for any entry type supporting +, -, *, /, == and
truthiness (zero test): Fraction, int, and Cyclotomic all qualify, and may
be mixed within one matrix.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class SpanBuilder:
    """Incrementally reduced row space (rref form, pivots normalized to 1)."""

    def __init__(self, width):
        self.width = width
        self.pivots = {}  # pivot column -> fully reduced row

    def _reduce(self, row):
        row = list(row)
        for c, prow in self.pivots.items():
            x = row[c]
            if x:
                for j in range(c, self.width):
                    if prow[j]:
                        row[j] = row[j] - x * prow[j]
        return row

    def insert(self, row):
        """Reduce `row` against the span; add it if independent.

        Returns True when the row enlarged the span.
        """
        row = self._reduce(row)
        for c in range(self.width):
            if row[c]:
                inv = ONE / row[c]
                row = [e * inv for e in row]
                for prow in self.pivots.values():
                    x = prow[c]
                    if x:
                        for j in range(c, self.width):
                            if row[j]:
                                prow[j] = prow[j] - x * row[j]
                self.pivots[c] = row
                return True
        return False

    def contains(self, row):
        return not any(self._reduce(row))

    @property
    def rank(self):
        return len(self.pivots)

    def basis(self):
        return [list(self.pivots[c]) for c in sorted(self.pivots)]


def rank(rows, width=None):
    if not rows:
        return 0
    sb = SpanBuilder(width if width is not None else len(rows[0]))
    for r in rows:
        sb.insert(r)
    return sb.rank


def nullspace(rows, width):
    """Basis of {v : M v = 0} where the rows of M are `rows`."""
    sb = SpanBuilder(width)
    for r in rows:
        sb.insert(r)
    pivcols = sorted(sb.pivots)
    free = [c for c in range(width) if c not in sb.pivots]
    basis = []
    for f in free:
        v = [ZERO] * width
        v[f] = ONE
        for c in pivcols:
            x = sb.pivots[c][f]
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def express_in_rows(rows, target):
    """Coefficients c with sum(c[i] * rows[i]) == target, or None."""
    n = len(rows)
    width = len(target)
    # eliminate on the transposed system (unknowns = row coefficients)
    aug = [[rows[i][j] for i in range(n)] + [target[j]] for j in range(width)]
    pivrow = 0
    pivcols = []
    for c in range(n):
        r = pivrow
        while r < width and not aug[r][c]:
            r += 1
        if r == width:
            continue
        aug[pivrow], aug[r] = aug[r], aug[pivrow]
        inv = ONE / aug[pivrow][c]
        aug[pivrow] = [e * inv for e in aug[pivrow]]
        for rr in range(width):
            if rr != pivrow and aug[rr][c]:
                x = aug[rr][c]
                aug[rr] = [a - x * b for a, b in zip(aug[rr], aug[pivrow])]
        pivcols.append(c)
        pivrow += 1
    for r in range(pivrow, width):
        if aug[r][n]:
            return None
    coeffs = [ZERO] * n
    for r, c in enumerate(pivcols):
        coeffs[c] = aug[r][n]
    return coeffs


def mat_apply(matrix, vec):
    """matrix is a list of rows; returns matrix @ vec."""
    out = []
    for row in matrix:
        s = ZERO
        for a, b in zip(row, vec):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def identity_matrix(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
