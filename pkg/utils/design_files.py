"""
Design Files - The canonical STEINER plain-text format
Line 1 "STEINER v k b", then b lines of k ascending 0-based points,
lines in lexicographic order
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

from core.designs import IncidenceStructure
from core.errors import DesignFormatError

logger = logging.getLogger(__name__)

HEADER = "STEINER"


def format_design(s: IncidenceStructure) -> str:
    lines = [f"{HEADER} {s.v} {s.k} {s.b}"]
    lines.extend(" ".join(str(x) for x in block) for block in s.blocks)
    return "\n".join(lines) + "\n"


def write_design(s: IncidenceStructure, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_design(s))
    logger.info(f"[Designs] Wrote {s.b} blocks to {path}")
    return path


def _parse_ints(path: str, line_no: int, tokens: List[str]) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise DesignFormatError(path, line_no, f"non-integer token in {' '.join(tokens)!r}")


def parse_design(text: str, path: str = "<text>") -> IncidenceStructure:
    rows = [line.split() for line in text.splitlines()]
    rows = [(i + 1, row) for i, row in enumerate(rows) if row]
    if not rows:
        raise DesignFormatError(path, 1, "empty file")

    line_no, header = rows[0]
    if len(header) != 4 or header[0] != HEADER:
        raise DesignFormatError(path, line_no, f"expected '{HEADER} v k b'")
    v, k, b = _parse_ints(path, line_no, header[1:])
    if not 0 < k <= v:
        raise DesignFormatError(path, line_no, f"need 0 < k <= v, got v={v} k={k}")

    body = rows[1:]
    if len(body) != b:
        raise DesignFormatError(path, line_no, f"header announces {b} blocks, found {len(body)}")

    blocks: List[Tuple[int, ...]] = []
    for line_no, row in body:
        block = tuple(_parse_ints(path, line_no, row))
        if len(block) != k:
            raise DesignFormatError(path, line_no, f"expected {k} points, found {len(block)}")
        if any(x < 0 or x >= v for x in block):
            raise DesignFormatError(path, line_no, f"point outside 0..{v - 1}")
        if any(x >= y for x, y in zip(block, block[1:])):
            raise DesignFormatError(path, line_no, "points must be distinct and ascending")
        if blocks and block <= blocks[-1]:
            reason = "duplicate block" if block == blocks[-1] else "blocks out of lexicographic order"
            raise DesignFormatError(path, line_no, reason)
        blocks.append(block)

    return IncidenceStructure(v, k, tuple(blocks))


def read_design(path: Union[str, Path]) -> IncidenceStructure:
    path = Path(path)
    if not path.is_file():
        raise DesignFormatError(str(path), 0, "file not found")
    return parse_design(path.read_text(), str(path))
