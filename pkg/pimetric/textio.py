"""
Text Formats

Plain-text forms of the objects the command line reads and writes. Every
format is line based; blank lines and anything after a '#' are ignored.

    vector              1,0|1            (element indices, blocks split by '|')
    header              q=2 pi=2,1
    generator matrix    optional header, then one vector per line
    explicit map        header, then "<vector> -> <vector>" per vector
    structured doc      header, "sigma: [j_1,...,j_m]" (1-based images),
                        "T<i>: [t_0,...]" (0-based block value images)
    linear doc          header, "sigma: [...]", "A<i>: [[...],[...]]"
                        (row-major element indices)

Every malformed input raises ParseError. Well-formed input describing an
invalid object (a non-admissible sigma, a singular matrix) raises the
corresponding domain error from the constructor.
"""

from __future__ import annotations

import json
import re
from typing import Optional, Union

from pimetric.autgroup import BlockMatrix, LinearBlockMap
from pimetric.errors import InvalidPartition, NotPrimePower, ParseError
from pimetric.ffield import FieldSpec, make_field
from pimetric.permutations import format_perm, parse_perm
from pimetric.pispace import BlockVector, GeneratorMatrix, Partition, PiSpace
from pimetric.symmetry import BlockBijection, ExplicitMap, StructuredSymmetry


_HEADER_RE = re.compile(r"^q\s*=\s*(\d+)\s+pi\s*=\s*([0-9,\s]+)$")
_ENTRY_RE = re.compile(r"^(sigma|[TA](\d+))\s*:\s*(.+)$")


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(line number, stripped content) for every non-blank, non-comment line."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((number, line))
    return out


# ============================================================
# HEADERS AND VECTORS
# ============================================================

def format_header(space: PiSpace) -> str:
    return f"q={space.q} pi={space.partition}"


def parse_header(line: str) -> PiSpace:
    """
    Parse "q=<q> pi=<k_1>,<k_2>,...".

    Raises:
        ParseError: If the line is not a header or names an invalid space
    """
    match = _HEADER_RE.match(line.strip())
    if not match:
        raise ParseError(f"expected a header 'q=<q> pi=<k_1>,...', got {line!r}")
    try:
        field = make_field(int(match.group(1)))
        partition = Partition.parse(match.group(2).replace(" ", ""))
    except (NotPrimePower, InvalidPartition) as e:
        raise ParseError(f"invalid header {line!r}: {e}")
    return PiSpace(field, partition)


def _is_header(line: str) -> bool:
    return _HEADER_RE.match(line) is not None


def format_vector(v: BlockVector) -> str:
    return str(v)


def _parse_blocks(text: str, q: int) -> list[list[int]]:
    blocks = []
    for part in text.split("|"):
        try:
            values = [int(x) for x in part.split(",")]
        except ValueError:
            raise ParseError(f"invalid vector {text!r}: blocks must be comma-separated integers")
        if any(not 0 <= x < q for x in values):
            raise ParseError(f"invalid vector {text!r}: entries must lie in [0, {q})")
        blocks.append(values)
    return blocks


def parse_vector(text: str, field: FieldSpec, partition: Optional[Partition] = None) -> BlockVector:
    """
    Parse a vector such as "1,0|1".

    Without a partition the block lengths of the text define it.

    Raises:
        ParseError: If the text is malformed or does not fit the partition
    """
    blocks = _parse_blocks(text.strip(), field.q)
    shape = tuple(len(b) for b in blocks)
    if partition is None:
        try:
            partition = Partition(shape)
        except InvalidPartition as e:
            raise ParseError(f"invalid vector {text!r}: {e}")
    elif shape != partition.blocks:
        raise ParseError(f"vector {text!r} has block sizes {shape}, expected {partition.blocks}")
    return BlockVector(field, partition, tuple(x for b in blocks for x in b))


# ============================================================
# GENERATOR MATRICES
# ============================================================

def parse_generator(text: str, q: Optional[int] = None) -> GeneratorMatrix:
    """
    Parse a generator matrix: an optional header, then one vector per line.

    Without a header, q must be given and the first row fixes the partition.

    Raises:
        ParseError: If the file is malformed or its rows disagree
    """
    lines = _content_lines(text)
    partition: Optional[Partition] = None
    if lines and _is_header(lines[0][1]):
        space = parse_header(lines[0][1])
        field, partition = space.field, space.partition
        lines = lines[1:]
    elif q is None:
        raise ParseError("generator matrix has no 'q=... pi=...' header and no q was given")
    else:
        try:
            field = make_field(q)
        except NotPrimePower as e:
            raise ParseError(str(e))

    if not lines:
        raise ParseError("generator matrix has no rows")
    rows = []
    for number, line in lines:
        try:
            row = parse_vector(line, field, partition)
        except ParseError as e:
            raise ParseError(f"line {number}: {e}")
        partition = row.partition
        rows.append(row)
    return GeneratorMatrix(tuple(rows))


def format_generator(generator: GeneratorMatrix) -> str:
    lines = [format_header(generator.space)]
    lines.extend(format_vector(row) for row in generator.rows)
    return "\n".join(lines) + "\n"


# ============================================================
# EXPLICIT MAPS
# ============================================================

def parse_explicit_map(text: str) -> ExplicitMap:
    """
    Parse a map file: header, then "<input> -> <output>" once per vector.

    Lines may come in any order but every vector must appear exactly once
    as an input.

    Raises:
        ParseError: If the file is malformed or incomplete
        SpaceTooLarge: If the header names a space too large to tabulate
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("map file is empty")
    space = parse_header(lines[0][1])
    space.require_enumerable()

    table: list[Optional[int]] = [None] * space.size
    for number, line in lines[1:]:
        if line.count("->") != 1:
            raise ParseError(f"line {number}: expected '<vector> -> <vector>', got {line!r}")
        left, right = line.split("->")
        try:
            source = parse_vector(left, space.field, space.partition)
            target = parse_vector(right, space.field, space.partition)
        except ParseError as e:
            raise ParseError(f"line {number}: {e}")
        if table[source.index] is not None:
            raise ParseError(f"line {number}: vector {source} is mapped twice")
        table[source.index] = target.index

    missing = [i for i, t in enumerate(table) if t is None]
    if missing:
        raise ParseError(
            f"map file covers {space.size - len(missing)} of {space.size} vectors; "
            f"first missing: {space.vector(missing[0])}"
        )
    return ExplicitMap(space, tuple(table))


def format_explicit_map(f: ExplicitMap) -> str:
    space = f.space
    lines = [format_header(space)]
    for i, image in enumerate(f.table):
        lines.append(f"{space.vector(i)} -> {space.vector(image)}")
    return "\n".join(lines) + "\n"


# ============================================================
# STRUCTURED AND LINEAR DOCUMENTS
# ============================================================

def _parse_json_list(value: str, what: str, number: int) -> list:
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        raise ParseError(f"line {number}: {what} is not a bracketed list: {value!r}")
    if not isinstance(parsed, list):
        raise ParseError(f"line {number}: {what} is not a list: {value!r}")
    return parsed


def _int_list(items: list, what: str, number: int) -> list[int]:
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in items):
        raise ParseError(f"line {number}: {what} must contain integers only")
    return items


def _read_entries(text: str, letter: str) -> tuple[PiSpace, tuple[int, ...], dict[int, tuple[int, str]]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("document is empty")
    space = parse_header(lines[0][1])

    sigma = None
    entries: dict[int, tuple[int, str]] = {}
    for number, line in lines[1:]:
        match = _ENTRY_RE.match(line)
        if not match:
            raise ParseError(f"line {number}: unrecognised line {line!r}")
        key, index, value = match.groups()
        if key == "sigma":
            if sigma is not None:
                raise ParseError(f"line {number}: sigma given twice")
            try:
                sigma = parse_perm(value)
            except ParseError as e:
                raise ParseError(f"line {number}: {e}")
            continue
        if key[0] != letter:
            raise ParseError(f"line {number}: unexpected entry {key!r} in a {letter}-document")
        i = int(index)
        if not 1 <= i <= space.m:
            raise ParseError(f"line {number}: {key} out of range, pi={space.partition} has {space.m} blocks")
        if i in entries:
            raise ParseError(f"line {number}: {key} given twice")
        entries[i] = (number, value)

    if sigma is None:
        raise ParseError("document has no 'sigma:' line")
    if len(sigma) != space.m:
        raise ParseError(f"sigma has {len(sigma)} entries, pi={space.partition} has {space.m} blocks")
    missing = [i for i in range(1, space.m + 1) if i not in entries]
    if missing:
        raise ParseError(f"missing {letter}{missing[0]}")
    return space, sigma, entries


def parse_structured(text: str) -> StructuredSymmetry:
    """
    Parse a structured symmetry document (header, sigma, T1..Tm).

    Raises:
        ParseError: If the document is malformed
        NotAdmissible: If sigma exchanges blocks of different sizes
        NotBijective: If a block table is not a permutation
    """
    space, sigma, entries = _read_entries(text, "T")
    blocks = []
    for i, k in enumerate(space.partition.blocks, start=1):
        number, value = entries[i]
        table = _int_list(_parse_json_list(value, f"T{i}", number), f"T{i}", number)
        if len(table) != space.q ** k:
            raise ParseError(f"line {number}: T{i} needs {space.q ** k} entries, got {len(table)}")
        blocks.append(BlockBijection(space.q, k, tuple(table)))
    return StructuredSymmetry(space, sigma, tuple(blocks))


def format_structured(s: StructuredSymmetry) -> str:
    lines = [format_header(s.space), f"sigma: {format_perm(s.sigma)}"]
    for i, block in enumerate(s.blocks, start=1):
        lines.append(f"T{i}: [{','.join(map(str, block.table))}]")
    return "\n".join(lines) + "\n"


def parse_linear(text: str) -> LinearBlockMap:
    """
    Parse a linear block map document (header, sigma, A1..Am).

    Raises:
        ParseError: If the document is malformed
        NotAdmissible: If sigma exchanges blocks of different sizes
        SingularMatrix: If a block matrix is not invertible
    """
    space, sigma, entries = _read_entries(text, "A")
    mats = []
    for i, k in enumerate(space.partition.blocks, start=1):
        number, value = entries[i]
        rows = _parse_json_list(value, f"A{i}", number)
        if len(rows) != k or not all(isinstance(r, list) and len(r) == k for r in rows):
            raise ParseError(f"line {number}: A{i} must be a {k}x{k} matrix")
        for row in rows:
            _int_list(row, f"A{i}", number)
        if any(not 0 <= x < space.q for row in rows for x in row):
            raise ParseError(f"line {number}: A{i} entries must lie in [0, {space.q})")
        mats.append(BlockMatrix(space.field, tuple(tuple(row) for row in rows)))
    return LinearBlockMap(space, sigma, tuple(mats))


def format_linear(lin: LinearBlockMap) -> str:
    lines = [format_header(lin.space), f"sigma: {format_perm(lin.sigma)}"]
    for i, mat in enumerate(lin.mats, start=1):
        rows = ",".join("[" + ",".join(map(str, row)) + "]" for row in mat.entries)
        lines.append(f"A{i}: [{rows}]")
    return "\n".join(lines) + "\n"


def parse_symmetry_document(text: str) -> Union[StructuredSymmetry, LinearBlockMap]:
    """Parse either document kind, telling them apart by their T or A lines."""
    if any(re.match(r"^A\d+\s*:", line) for _, line in _content_lines(text)):
        return parse_linear(text)
    return parse_structured(text)
