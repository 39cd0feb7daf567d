"""
Static renders of spacetime grids (ASCII glyph rows and plain P2 PGM) and
the Excel report writer shared by the CLI commands.
"""

import logging

import pandas as pd

from grossca.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_GLYPHS = "·#"
DEFAULT_ASCII_GLYPHS = ".#"


def check_glyphs(glyphs, s):
    if len(glyphs) < s:
        raise DomainError(f"glyph map {glyphs!r} has {len(glyphs)} glyphs, alphabet needs {s}")
    return glyphs


def render_ascii(grid, glyphs=DEFAULT_GLYPHS):
    """One line per time step, one glyph per cell."""
    check_glyphs(glyphs, grid.alphabet.size)
    return "\n".join("".join(glyphs[v] for v in row) for row in grid.rows.tolist())


def render_pgm(grid):
    """Plain PGM (P2): width, height, maxval s-1, then one row per time step."""
    height, width = grid.rows.shape
    lines = ["P2", f"{width} {height}", str(grid.alphabet.size - 1)]
    lines.extend(" ".join(str(v) for v in row) for row in grid.rows.tolist())
    return "\n".join(lines)


def grid_frame(grid):
    """Spacetime grid as a DataFrame: one row per step, one column per cell index."""
    df = pd.DataFrame(grid.rows, columns=[str(i) for i in grid.columns])
    df.insert(0, "t", range(len(df)))
    return df


def fmt_excel(writer, df, sheet):
    wb = writer.book
    ws = writer.sheets[sheet]
    header_fmt = wb.add_format({'bold': True, 'bg_color': '#D7E4BC', 'text_wrap': True, 'valign': 'top'})
    wrap_fmt = wb.add_format({'text_wrap': True, 'valign': 'top'})
    for col_num, value in enumerate(df.columns.values):
        ws.write(0, col_num, value, header_fmt)
    for idx, col in enumerate(df.columns):
        max_len = df[col].astype(str).map(len).max()
        if pd.isna(max_len):
            max_len = 0
        max_len = max(int(max_len), len(str(col)))
        ws.set_column(idx, idx, min(max_len + 2, 50), wrap_fmt)


def write_report(frames, path):
    """Write {sheet name: DataFrame} to one workbook."""
    with pd.ExcelWriter(path, engine='xlsxwriter') as writer:
        for sheet, df in frames.items():
            df.to_excel(writer, sheet_name=sheet, index=False)
            fmt_excel(writer, df, sheet)
    logger.info(f"Report written to {path}")
    return path
