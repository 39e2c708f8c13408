"""Renderers for assemblies and paths, and the glue table.

ASCII puts one tile in one character cell, north at the top. SVG draws
16-px tiles with a tick on every bound edge.
"""
import logging
from typing import Any, Dict, List, Optional

import pandas as pd

from app.core.assembly import Assembly, TileSystem, extents
from app.core.glues import glues, visible_glue
from app.core.lattice import Side, add
from app.core.models import OutputFormat, VerticalSide
from app.core.paths import Path

logger = logging.getLogger(__name__)

TILE_PX = 16
SEED_CHAR = "#"
PATH_CHAR = "*"
TILE_CHAR = "o"
EMPTY_CHAR = "."


def render_json(system: TileSystem, assembly: Assembly, path: Optional[Path] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "extents": extents(assembly).to_dict(),
        "tiles": [
            {"x": x, "y": y, "tile": assembly[(x, y)].name, "seed": (x, y) in system.seed}
            for x, y in sorted(assembly.positions, key=lambda p: (p[1], p[0]))
        ],
    }
    if path is not None:
        doc["path"] = path.to_json()
    return doc


def render_ascii(system: TileSystem, assembly: Assembly, path: Optional[Path] = None) -> str:
    on_path = path.position_set if path is not None else frozenset()
    ext = extents(list(assembly.positions) + list(on_path))
    rows = []
    for y in range(ext.north, ext.south - 1, -1):
        row = []
        for x in range(ext.west, ext.east + 1):
            pos = (x, y)
            if pos in system.seed:
                row.append(SEED_CHAR)
            elif pos in on_path:
                row.append(PATH_CHAR)
            elif pos in assembly:
                row.append(TILE_CHAR)
            else:
                row.append(EMPTY_CHAR)
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def _bound_edges(assembly: Assembly) -> List[tuple]:
    edges = []
    for pos, tile in assembly.items():
        for side in (Side.EAST, Side.NORTH):
            other = add(pos, side.vector)
            neighbour = assembly.get(other)
            if neighbour is not None and tile.binds_towards(side, neighbour):
                edges.append((pos, side))
    return sorted(edges)


def render_svg(system: TileSystem, assembly: Assembly, path: Optional[Path] = None) -> str:
    ext = extents(assembly)
    width = (ext.width + 1) * TILE_PX
    height = (ext.height + 1) * TILE_PX
    on_path = path.position_set if path is not None else frozenset()

    def corner(pos) -> tuple:
        return (pos[0] - ext.west) * TILE_PX, (ext.north - pos[1]) * TILE_PX

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}">']
    for pos in sorted(assembly.positions, key=lambda p: (p[1], p[0])):
        x, y = corner(pos)
        fill = "#555555" if pos in system.seed else "#f2b632" if pos in on_path else "#9fc5e8"
        parts.append(f'<rect x="{x}" y="{y}" width="{TILE_PX}" height="{TILE_PX}" fill="{fill}" '
                     f'stroke="#333333"><title>{assembly[pos].name} ({pos[0]},{pos[1]})</title></rect>')
    half, tick = TILE_PX // 2, TILE_PX // 4
    for pos, side in _bound_edges(assembly):
        x, y = corner(pos)
        if side is Side.EAST:
            parts.append(f'<line x1="{x + TILE_PX - tick}" y1="{y + half}" x2="{x + TILE_PX + tick}" '
                         f'y2="{y + half}" stroke="#000000" stroke-width="2"/>')
        else:
            parts.append(f'<line x1="{x + half}" y1="{y - tick}" x2="{x + half}" y2="{y + tick}" '
                         f'stroke="#000000" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(system: TileSystem, assembly: Assembly, path: Optional[Path] = None,
           fmt: OutputFormat = OutputFormat.JSON) -> Any:
    if fmt is OutputFormat.ASCII:
        return render_ascii(system, assembly, path)
    if fmt is OutputFormat.SVG:
        return render_svg(system, assembly, path)
    return render_json(system, assembly, path)


def glue_table(system: TileSystem, p: Path) -> pd.DataFrame:
    """One row per glue: index, column, direction, y and visibility from each side."""
    records = glues(p)
    visible = {side: set() for side in VerticalSide}
    for c in range(p.extents.west, p.extents.east):
        for side in VerticalSide:
            k = visible_glue(p, system.seed, c, side)
            if k is not None:
                visible[side].add(k)
    rows = [{
        "index": g.index,
        "orientation": g.orientation.value,
        "column": g.column,
        "direction": g.points.value if g.points else None,
        "y": g.y if g.horizontal else None,
        "label": g.label,
        "visible_north": g.index in visible[VerticalSide.NORTH],
        "visible_south": g.index in visible[VerticalSide.SOUTH],
    } for g in records]
    columns = ["index", "orientation", "column", "direction", "y", "label", "visible_north", "visible_south"]
    return pd.DataFrame(rows, columns=columns, dtype=object)


def verdict_table(verdicts: List[Dict[str, Any]]) -> pd.DataFrame:
    """One row per check of a verify run."""
    rows = [{
        "check": v["lemma"],
        "instances": v["instances"],
        "met": v["preconditions_met"],
        "violations": len(v["violations"]),
        "status": "FAIL" if not v["passed"] else (v["note"] or "ok"),
    } for v in verdicts]
    return pd.DataFrame(rows, columns=["check", "instances", "met", "violations", "status"])
