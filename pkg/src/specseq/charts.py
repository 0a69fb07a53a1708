"""Chart rendering: page grids with differential arrows, ascii or tex."""

from __future__ import annotations


class ChartError(ValueError):
    pass


def render_chart(ss, page, fmt="ascii", max_width=14):
    """Grid of entry dims for one page, plus the nonzero d_r arrows.

    Rows are q descending, columns p ascending; uncertified entries are
    shown in parentheses.  The tex format emits a plain tabular.
    """
    if page < 0 or page >= len(ss.pages):
        raise ChartError(f"page {page} not computed (0..{len(ss.pages) - 1})")
    pg = ss.pages[page]
    if not pg.entries:
        frame = "(empty page)" if fmt == "ascii" else "% empty page"
        return f"{ss.name or 'E'}_{page}:\n  q\n  ^\n  +--> p   {frame}\n"
    ps = sorted({p for (p, _) in pg.entries})
    qs = sorted({q for (_, q) in pg.entries})
    p_range = list(range(ps[0], ps[-1] + 1))[:max_width]
    q_range = list(range(qs[0], qs[-1] + 1))

    def cell(p, q):
        e = pg.entries.get((p, q))
        if e is None:
            return "."
        return str(e.dim) if e.certified else f"({e.dim})"

    arrows = [f"d_{page}: ({p},{q}) -> ({p + page},{q - page + 1})  rank {rk}"
              for (p, q), _, rk in pg.nonzero_differentials()]

    if fmt == "ascii":
        width = max(3, max(len(cell(p, q)) for p in p_range for q in q_range) + 1)
        lines = [f"{ss.name or 'E'}_{page} page (rows q, columns p)"]
        for q in reversed(q_range):
            row = "".join(cell(p, q).rjust(width) for p in p_range)
            lines.append(f"q={q:>3} |{row}")
        lines.append("      +" + "-" * (width * len(p_range)))
        lines.append("       " + "".join(str(p).rjust(width) for p in p_range))
        lines.extend("  " + a for a in arrows)
        return "\n".join(lines) + "\n"
    if fmt == "tex":
        lines = [r"\begin{tabular}{r|" + "c" * len(p_range) + "}"]
        for q in reversed(q_range):
            row = " & ".join(cell(p, q) for p in p_range)
            lines.append(f"$q={q}$ & {row} \\\\")
        lines.append(r"\hline")
        lines.append("$p$ & " + " & ".join(str(p) for p in p_range) + r" \\")
        lines.append(r"\end{tabular}")
        lines.extend(f"% {a}" for a in arrows)
        return "\n".join(lines) + "\n"
    raise ChartError(f"unknown format {fmt!r}")


def render_tri_slice(tri, fixed, value, fmt="ascii"):
    """Slice of the tri-graded first page: fixed 't' (s/u grid) or 's' (t/u grid)."""
    entries = {}
    for (s, t, u), dim in tri.entries.items():
        if fixed == "t" and t == value:
            entries[(s, u)] = dim
        elif fixed == "s" and s == value:
            entries[(t, u)] = dim
    if not entries:
        return f"(empty tri slice {fixed}={value})\n"
    xs = sorted({x for (x, _) in entries})
    ys = sorted({y for (_, y) in entries})
    lines = [f"tri-page slice {fixed}={value} "
             f"(rows u, columns {'s' if fixed == 't' else 't'})"]
    for y in reversed(range(ys[0], ys[-1] + 1)):
        row = "".join(str(entries.get((x, y), ".")).rjust(4)
                      for x in range(xs[0], xs[-1] + 1))
        lines.append(f"u={y:>3} |{row}")
    lines.append("       " + "".join(str(x).rjust(4) for x in range(xs[0], xs[-1] + 1)))
    return "\n".join(lines) + "\n"
