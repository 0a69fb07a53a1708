"""Plain-text fixture format for complexes and filtrations (golden tests).

The format is line-based and stable:

    field q            # or f2, f3, f5
    complex <n_max>
    degree <n> dim <d> [labels ...]
    d <n>              # followed by dim(C^n) rows of dim(C^{n+1}) entries
    1/2 0 3
    ...
    filtration <name> <s_min> <s_max>
    step <s> <n>       # followed by basis rows (possibly none) of width dim(C^n)
    ...
    end

Entries are integers or rationals 'a/b'.  Every block is optional except
'field' and 'complex'; omitted differentials and filtration steps default
to zero matrices / clamped subspaces.  Written files round-trip exactly.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace, field_by_name
from .complexes import CochainComplex, FilteredComplex, GradedSpace


class FixtureError(ValueError):
    pass


def dump_filtered_complex(fc, name="F"):
    cx = fc.complex
    lines = [f"field {repr(cx.field).lower()}"]
    lines.append(f"complex {cx.n_max}")
    for n in range(cx.n_max + 1):
        labs = " ".join(cx.space.labels[n])
        lines.append(f"degree {n} dim {cx.dim(n)}{(' ' + labs) if labs else ''}")
    for n in range(cx.n_max + 1):
        m = cx.diff(n)
        if m.is_zero():
            continue
        lines.append(f"d {n}")
        for i in range(m.rows):
            lines.append(" ".join(str(x) for x in m.row(i)))
    lines.append(f"filtration {name} {fc.s_min} {fc.s_max}")
    for s in range(fc.s_min, fc.s_max + 2):
        for n in range(cx.n_max + 1):
            sub = fc.sub(s, n)
            lines.append(f"step {s} {n}")
            for i in range(sub.dim):
                lines.append(" ".join(str(x) for x in sub.basis.row(i)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_filtered_complex(text):
    lines = [ln.strip() for ln in text.splitlines()]
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines) and (not lines[pos] or lines[pos].startswith("#")):
            pos += 1
        if pos >= len(lines):
            return None
        ln = lines[pos]
        pos += 1
        return ln

    ln = next_line()
    if ln is None or not ln.startswith("field "):
        raise FixtureError("fixture must start with a field line")
    field = field_by_name(ln.split()[1])
    ln = next_line()
    if ln is None or not ln.startswith("complex "):
        raise FixtureError("missing complex line")
    n_max = int(ln.split()[1])
    dims = [0] * (n_max + 1)
    labels = [None] * (n_max + 1)
    diffs = {}
    filt = None
    steps = {}
    while True:
        ln = next_line()
        if ln is None or ln == "end":
            break
        parts = ln.split()
        if parts[0] == "degree":
            n = int(parts[1])
            if parts[2] != "dim":
                raise FixtureError(f"bad degree line: {ln}")
            dims[n] = int(parts[3])
            rest = parts[4:]
            labels[n] = rest if rest else None
        elif parts[0] == "d":
            n = int(parts[1])
            rows = []
            for _ in range(dims[n]):
                row_ln = next_line()
                rows.append([field.of(x) for x in row_ln.split()])
            diffs[n] = rows
        elif parts[0] == "filtration":
            filt = (parts[1], int(parts[2]), int(parts[3]))
        elif parts[0] == "step":
            s, n = int(parts[1]), int(parts[2])
            rows = []
            while pos < len(lines) and lines[pos] and not lines[pos].split()[0] in (
                    "step", "degree", "d", "filtration", "end"):
                rows.append([field.of(x) for x in lines[pos].split()])
                pos += 1
            steps[(s, n)] = rows
        else:
            raise FixtureError(f"unknown directive: {ln}")
    lab = [labels[n] if labels[n] is not None
           else [f"e{n}_{i}" for i in range(dims[n])] for n in range(n_max + 1)]
    sp = GradedSpace(field, n_max, dims, lab)
    d = []
    for n in range(n_max + 1):
        cols = dims[n + 1] if n < n_max else 0
        if n in diffs:
            d.append(Matrix.from_rows(field, diffs[n], cols))
        else:
            d.append(Matrix.zeros(field, dims[n], cols))
    cx = CochainComplex(sp, d)
    if filt is None:
        from .complexes import one_step_filtration
        return one_step_filtration(cx)
    _, s_min, s_max = filt
    sub_steps = {}
    for s in range(s_min, s_max + 2):
        for n in range(n_max + 1):
            rows = steps.get((s, n))
            if rows is None:
                sub = cx.full(n) if s == s_min else cx.zero_sub(n)
            else:
                sub = Subspace.from_rows(field, rows, dims[n])
            sub_steps[(s, n)] = sub
    return FilteredComplex(cx, s_min, s_max, sub_steps)
