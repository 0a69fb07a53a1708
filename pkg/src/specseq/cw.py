"""CW models: cells, cellular coboundaries, skeletal filtrations, minimality.

Models are stored over an explicit field, as cellular cochain complexes
(one basis label per cell).  ``is_k_minimal`` decides minimality of the
given structure only: whether some other CW structure on the same space
is minimal is not searched.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace
from .complexes import CochainComplex, FilteredComplex, GradedSpace


class CWError(ValueError):
    pass


class CWModel:
    """Cells per dimension with cellular coboundary matrices."""

    def __init__(self, field, cells, coboundaries, name=""):
        self.field = field
        self.cells = list(cells)          # labels per dimension
        self.dim_top = len(cells) - 1
        self.name = name
        dims = [len(c) for c in cells]
        sp = GradedSpace(field, self.dim_top, dims, [list(c) for c in cells])
        d = []
        for n in range(self.dim_top + 1):
            cols = dims[n + 1] if n < self.dim_top else 0
            m = coboundaries[n] if n < len(coboundaries) and coboundaries[n] is not None \
                else Matrix.zeros(field, dims[n], cols)
            if m.shape != (dims[n], cols):
                raise CWError(f"coboundary {n} has shape {m.shape}, want {(dims[n], cols)}")
            d.append(m)
        self.complex = CochainComplex(sp, d)  # validates d^2 = 0

    def cell_counts(self):
        return [len(c) for c in self.cells]

    def skeletal_filtration(self):
        """F^s = cochains vanishing on the (s-1)-skeleton = cells of dim >= s."""
        cx = self.complex
        steps = {}
        for s in range(0, self.dim_top + 2):
            for n in range(self.dim_top + 1):
                if s <= n:
                    steps[(s, n)] = cx.full(n)
                else:
                    steps[(s, n)] = cx.zero_sub(n)
        return FilteredComplex(cx, 0, self.dim_top, steps)

    def __repr__(self):
        return f"CWModel({self.name}, cells={self.cell_counts()})"


def is_k_minimal(model):
    """True iff every cellular coboundary vanishes over the model's field."""
    return all(model.complex.d[n].is_zero() for n in range(model.dim_top + 1))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def sphere(field, r, name=None):
    if r < 1:
        raise CWError("sphere dimension must be >= 1")
    cells = [["pt"]] + [[] for _ in range(r - 1)] + [[f"e{r}"]]
    return CWModel(field, cells, [], name=name or f"S^{r}")


def torus(field, n, name=None):
    """(S^1)^n with the product minimal structure: C(n, k) cells per degree."""
    from itertools import combinations
    cells = []
    for k in range(n + 1):
        cells.append(["x" + "".join(map(str, c)) for c in combinations(range(1, n + 1), k)])
    return CWModel(field, cells, [], name=name or f"T^{n}")


def cp(field, n, name=None):
    """CP^n: one cell in each even dimension up to 2n."""
    cells = []
    for d in range(2 * n + 1):
        cells.append([f"c{d}"] if d % 2 == 0 else [])
    return CWModel(field, cells, [], name=name or f"CP^{n}")


def cp_trunc(field, top, name=None):
    """Truncated model of CP^infinity with cells in even dimensions <= top."""
    cells = [[f"c{d}"] if d % 2 == 0 else [] for d in range(top + 1)]
    return CWModel(field, cells, [], name=name or "CP^inf-trunc")


def hp_trunc(field, top, name=None):
    """Truncated model of HP^infinity with cells in dimensions 0, 4, 8, ..."""
    cells = [[f"w{d}"] if d % 4 == 0 else [] for d in range(top + 1)]
    return CWModel(field, cells, [], name=name or "HP^inf-trunc")


def rp(field, n, name=None):
    """RP^n with the standard one-cell-per-dimension structure.

    The coboundary C^k -> C^{k+1} is multiplication by 1 + (-1)^{k+1},
    i.e. 2 for odd k and 0 for even k (the attaching degree of the
    (k+1)-cell onto the k-cell).
    """
    cells = [[f"e{d}"] for d in range(n + 1)]
    cobs = []
    for k in range(n):
        val = 1 + (-1) ** (k + 1)
        cobs.append(Matrix.from_rows(field, [[field.of(val)]], 1))
    return CWModel(field, cells, cobs, name=name or f"RP^{n}")


def product(m1, m2, name=None):
    """Product CW structure with the sign rule of the tensor complex."""
    if m1.field != m2.field:
        raise CWError("product over mixed fields")
    from .complexes import tensor
    t = tensor(m1.complex, m2.complex)
    cells = [list(t.space.labels[n]) for n in range(t.n_max + 1)]
    cobs = [t.d[n] for n in range(t.n_max)]
    return CWModel(m1.field, cells, cobs, name=name or f"{m1.name}x{m2.name}")


def flag_su3(field, name=None):
    """SU(3)/T with its Bruhat-cell structure: even cells, counts 1,2,2,1."""
    cells = []
    counts = {0: ["w0"], 2: ["s1", "s2"], 4: ["s12", "s21"], 6: ["w_top"]}
    for d in range(7):
        cells.append(counts.get(d, []))
    return CWModel(field, cells, [], name=name or "SU(3)/T")


def point(field, name="pt"):
    return CWModel(field, [["pt"]], [], name=name)


def nonminimal_s2(field, name=None):
    """S^2 with two extra cells: a 1-cell loop e and a 2-cell f with df = e.

    The cellular cochain complex is K -> K -> K^2 with coboundary
    e* |-> f*; minimal in no characteristic.
    """
    cells = [["pt"], ["e"], ["E", "f"]]
    cob0 = Matrix.zeros(field, 1, 1)
    cob1 = Matrix.from_rows(field, [[0, 1]], 2)
    return CWModel(field, cells, [cob0, cob1], name=name or "S^2-nonminimal")
