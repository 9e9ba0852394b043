"""Scalar-linear XOR codec for interlinked-cycle templates.

The code for a template has one pair symbol per consecutive path edge,
one bridge symbol per nonempty connector, and a single combined parity
of all main-path terminals, for n - k + 1 symbols total.  Packets are
t-bit strings packed little-endian into ceil(t/8) bytes with zero
padding bits.

``decode_receiver`` follows the structural chains: a path vertex cancels
its successor's packet out of one pair symbol; a main-path terminal
folds the partial path sums of every other main path (and its connector
symbols) into the combined parity, then cancels the leftovers with side
packets it holds by construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    DecodeFailure,
    FormatError,
    InvalidCode,
    MissingCodedSymbol,
    MissingSidePacket,
)
from .template import Coord, IccTemplate, Labeling, validate_template

TAG_PATH_I = "path-I"
TAG_PATH_II = "path-II"
TAG_BRIDGE = "bridge"
TAG_SUM = "terminal-sum"
TAG_UNCODED = "uncoded"


def packet_bytes(t: int) -> int:
    return (t + 7) // 8


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise InvalidCode(f"packet length mismatch: {len(a)} vs {len(b)} bytes")
    return bytes(x ^ y for x, y in zip(a, b))


@dataclass(frozen=True)
class PacketVector:
    """One t-bit packet per message id, 1-indexed through packet(id)."""

    t: int
    packets: tuple[bytes, ...]

    def packet(self, message_id: int) -> bytes:
        if not 1 <= message_id <= len(self.packets):
            raise InvalidCode(f"message id {message_id} outside packet vector of size {len(self.packets)}")
        return self.packets[message_id - 1]


def new_packet_vector(t: int, packets) -> PacketVector:
    """Validate packet shapes: ceil(t/8) bytes each, padding bits zero."""
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InvalidCode(f"packet width must be a positive bit count, got {t!r}")
    width = packet_bytes(t)
    used = t - 8 * (width - 1)
    pad_mask = 0xFF ^ ((1 << used) - 1)
    out = []
    for idx, p in enumerate(packets, start=1):
        if not isinstance(p, (bytes, bytearray)):
            raise InvalidCode(f"packet {idx}: expected bytes, got {type(p).__name__}")
        p = bytes(p)
        if len(p) != width:
            raise InvalidCode(f"packet {idx}: expected {width} bytes for t={t}, got {len(p)}")
        if p[-1] & pad_mask:
            raise InvalidCode(f"packet {idx}: padding bits beyond t={t} must be zero")
        out.append(p)
    return PacketVector(t, tuple(out))


@dataclass(frozen=True)
class CodedSymbol:
    """Broadcast symbol: XOR of the messages in its support."""

    support: frozenset[int]
    payload: bytes | None = None
    tag: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))


@dataclass(frozen=True)
class IndexCode:
    """Ordered coded symbols; xor_bit_ops counts encoder work when payloads exist."""

    symbols: tuple[CodedSymbol, ...]
    xor_bit_ops: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))

    @property
    def length(self) -> int:
        return len(self.symbols)


def _layout(T: IccTemplate) -> list[tuple[tuple[Coord, ...], str]]:
    """Emission plan: path symbols by path then position, bridges by pair, parity last."""
    rows: list[tuple[tuple[Coord, ...], str]] = []
    for i in range(1, T.k + 1):
        for a in range(1, T.n_i(i)):
            rows.append((((i, a), (i, a + 1)), TAG_PATH_I))
    for (i, j) in T.pairs():
        for a in range(1, T.n_ij(i, j)):
            rows.append((((i, j, a), (i, j, a + 1)), TAG_PATH_II))
    for (i, j) in T.pairs():
        nij = T.n_ij(i, j)
        if nij >= 1:
            rows.append((((i, j, nij), (j, T.q(i, j))), TAG_BRIDGE))
    rows.append((tuple((i, T.n_i(i)) for i in range(1, T.k + 1)), TAG_SUM))
    return rows


def _checked_labeling(T: IccTemplate, labeling: Labeling) -> list[Coord]:
    coords = T.coords()
    missing = [c for c in coords if c not in labeling]
    if missing:
        raise InvalidCode(f"labeling missing coordinate {missing[0]}")
    ids = [labeling[c] for c in coords]
    if len(set(ids)) != len(ids):
        raise InvalidCode("labeling is not injective")
    return coords


def encode(T: IccTemplate, labeling: Labeling, packets: PacketVector | None = None) -> IndexCode:
    """Produce the template's index code; payloads are filled when packets are given."""
    problems = validate_template(T)
    if problems:
        from .errors import InvalidTemplate

        raise InvalidTemplate(problems)
    coords = _checked_labeling(T, labeling)
    if packets is not None:
        for c in coords:
            m = labeling[c]
            if not 1 <= m <= len(packets.packets):
                raise InvalidCode(f"message id {m} outside packet vector of size {len(packets.packets)}")
    ops = 0
    symbols = []
    for row, tag in _layout(T):
        support = frozenset(labeling[c] for c in row)
        payload = None
        if packets is not None:
            payload = packets.packet(labeling[row[0]])
            for c in row[1:]:
                payload = xor_bytes(payload, packets.packet(labeling[c]))
                ops += packets.t
        symbols.append(CodedSymbol(support, payload, tag))
    return IndexCode(tuple(symbols), xor_bit_ops=ops if packets is not None else None)


def code_length(T: IccTemplate) -> int:
    """Number of broadcast symbols the template's code needs: n - k + 1."""
    problems = validate_template(T)
    if problems:
        from .errors import InvalidTemplate

        raise InvalidTemplate(problems)
    return T.n - T.k + 1


def xor_op_count(T: IccTemplate, t: int) -> int:
    """Exact bit-XOR operations the encoder spends on t-bit packets."""
    problems = validate_template(T)
    if problems:
        from .errors import InvalidTemplate

        raise InvalidTemplate(problems)
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InvalidCode(f"packet width must be a positive bit count, got {t!r}")
    return sum((len(row) - 1) * t for row, _ in _layout(T))


def decode_receiver(
    T: IccTemplate,
    labeling: Labeling,
    code: IndexCode,
    receiver: int,
    side_packets: dict[int, bytes],
) -> bytes:
    """Recover the receiver's packet from the code and its side packets only.

    side_packets maps message ids to packets and must cover the receiver's
    out-neighbors in the built digraph; a superset is fine.  Raises
    MissingCodedSymbol or MissingSidePacket when a dependency is absent.
    """
    problems = validate_template(T)
    if problems:
        from .errors import InvalidTemplate

        raise InvalidTemplate(problems)
    _checked_labeling(T, labeling)
    inverse = {m: c for c, m in labeling.items()}
    coord = inverse.get(receiver)
    if coord is None:
        raise DecodeFailure(f"receiver {receiver} is not covered by the labeling")

    by_support: dict[frozenset[int], CodedSymbol] = {s.support: s for s in code.symbols}

    def fetch(*row: Coord) -> bytes:
        support = frozenset(labeling[c] for c in row)
        sym = by_support.get(support)
        if sym is None:
            raise MissingCodedSymbol(support)
        if sym.payload is None:
            ids = "+".join(f"x{i}" for i in sorted(support))
            raise DecodeFailure(f"coded symbol {ids} carries no payload")
        return sym.payload

    def side(message_id: int) -> bytes:
        if message_id not in side_packets:
            raise MissingSidePacket(message_id)
        return side_packets[message_id]

    if len(coord) == 2:
        i, a = coord
        ni = T.n_i(i)
        if a < ni:
            return xor_bytes(fetch((i, a), (i, a + 1)), side(labeling[(i, a + 1)]))
        # main-path terminal: fold every other path into the combined parity
        acc = fetch(*(T.terminal(h) for h in range(1, T.k + 1)))
        for h in range(1, T.k + 1):
            if h == i:
                continue
            q = T.q(i, h)
            for b in range(q, T.n_i(h)):
                acc = xor_bytes(acc, fetch((h, b), (h, b + 1)))
            nih = T.n_ij(i, h)
            if nih == 0:
                acc = xor_bytes(acc, side(labeling[(h, q)]))
            else:
                for b in range(1, nih):
                    acc = xor_bytes(acc, fetch((i, h, b), (i, h, b + 1)))
                acc = xor_bytes(acc, fetch((i, h, nih), (h, q)))
                acc = xor_bytes(acc, side(labeling[(i, h, 1)]))
        return acc
    i, j, a = coord
    nij = T.n_ij(i, j)
    if a < nij:
        return xor_bytes(fetch((i, j, a), (i, j, a + 1)), side(labeling[(i, j, a + 1)]))
    return xor_bytes(fetch((i, j, nij), (j, T.q(i, j))), side(labeling[(j, T.q(i, j))]))


# ---------- text formats ----------

_SUPPORT_TOKEN = re.compile(r"^x([1-9][0-9]*)$")
_HEX_TOKEN = re.compile(r"^(?:[0-9a-f]{2})+$")


def serialize_code(code: IndexCode) -> str:
    """One symbol per line: sorted "+"-joined ids, then payload hex when present.

    Tags are in-memory annotations and do not survive a roundtrip.
    """
    lines = []
    for s in code.symbols:
        head = "+".join(f"x{i}" for i in sorted(s.support))
        lines.append(head if s.payload is None else f"{head} {s.payload.hex()}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_code(text: str) -> IndexCode:
    """Parse a code listing; payload hex is optional per line."""
    symbols = []
    width: int | None = None
    for no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            raise FormatError(f"line {no}: empty line")
        parts = line.split()
        if len(parts) > 2:
            raise FormatError(f"line {no}: expected 'support [hex]', got {line!r}")
        ids = []
        for token in parts[0].split("+"):
            m = _SUPPORT_TOKEN.match(token)
            if not m:
                raise FormatError(f"line {no}: bad message id token {token!r}")
            ids.append(int(m.group(1)))
        if len(set(ids)) != len(ids):
            raise FormatError(f"line {no}: duplicate message id in support")
        payload = None
        if len(parts) == 2:
            if not _HEX_TOKEN.match(parts[1]):
                raise FormatError(f"line {no}: bad payload hex {parts[1]!r}")
            payload = bytes.fromhex(parts[1])
            if width is None:
                width = len(payload)
            elif len(payload) != width:
                raise FormatError(f"line {no}: payload width {len(payload)} differs from {width}")
        symbols.append(CodedSymbol(frozenset(ids), payload))
    return IndexCode(tuple(symbols))


def serialize_packets(X: PacketVector) -> str:
    """Header "t=<bits>", then one lowercase hex packet per message id."""
    lines = [f"t={X.t}"]
    lines.extend(p.hex() for p in X.packets)
    return "\n".join(lines) + "\n"


def _parse_header(lines: list[str]) -> int:
    if not lines or not lines[0].startswith("t="):
        raise FormatError("line 1: expected header 't=<bits>'")
    try:
        t = int(lines[0][2:])
    except ValueError:
        raise FormatError(f"line 1: bad bit count {lines[0][2:]!r}") from None
    if t < 1:
        raise FormatError(f"line 1: bit count must be >= 1, got {t}")
    return t


def _parse_hex(no: int, token: str, width: int) -> bytes:
    if not re.fullmatch(r"[0-9a-f]*", token) or len(token) % 2:
        raise FormatError(f"line {no}: bad packet hex {token!r}")
    raw = bytes.fromhex(token)
    if len(raw) != width:
        raise FormatError(f"line {no}: expected {width} bytes, got {len(raw)}")
    return raw


def parse_packets(text: str) -> PacketVector:
    """Parse a packet file into a validated vector (ids follow line order)."""
    lines = text.splitlines()
    t = _parse_header(lines)
    width = packet_bytes(t)
    pkts = [_parse_hex(no, line.strip(), width) for no, line in enumerate(lines[1:], start=2)]
    return new_packet_vector(t, pkts)


def serialize_side(t: int, side_packets: dict[int, bytes]) -> str:
    """Side packets as "id=hex" lines under the usual "t=" header."""
    lines = [f"t={t}"]
    lines.extend(f"{i}={side_packets[i].hex()}" for i in sorted(side_packets))
    return "\n".join(lines) + "\n"


def parse_side(text: str) -> tuple[int, dict[int, bytes]]:
    lines = text.splitlines()
    t = _parse_header(lines)
    width = packet_bytes(t)
    pad_mask = 0xFF ^ ((1 << (t - 8 * (width - 1))) - 1)
    out: dict[int, bytes] = {}
    for no, line in enumerate(lines[1:], start=2):
        if "=" not in line:
            raise FormatError(f"line {no}: expected 'id=hex', got {line!r}")
        left, right = line.split("=", 1)
        try:
            mid = int(left)
        except ValueError:
            raise FormatError(f"line {no}: bad message id {left!r}") from None
        if mid < 1:
            raise FormatError(f"line {no}: message id must be >= 1, got {mid}")
        if mid in out:
            raise FormatError(f"line {no}: duplicate message id {mid}")
        raw = _parse_hex(no, right.strip(), width)
        if raw[-1] & pad_mask:
            raise FormatError(f"line {no}: padding bits beyond t={t} must be zero")
        out[mid] = raw
    return t, out
