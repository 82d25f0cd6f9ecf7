"""Signed crossing codes of generic closed curves.

A code for a curve with ``n`` crossings lists the ``2n`` crossing positions
met while walking the curve from its basepoint.  ``twin[i]`` is the other
position at the same crossing and ``sign[i]`` is ``+1`` when the strand at
position ``i`` crosses the strand at ``twin[i]`` from right to left.
Positions are 1-based everywhere in the public interface.

The outer face is, by convention, the face immediately to the right of the
curve at its basepoint.  With that convention a code determines the curve in
the plane up to isotopy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable


class InvalidCode(ValueError):
    pass


class NotRealizable(InvalidCode):
    pass


@dataclass(frozen=True, order=True)
class SignedCrossingCode:
    twin: tuple[int, ...]
    sign: tuple[int, ...]

    def __init__(self, twin: Iterable[int], sign: Iterable[int]):
        object.__setattr__(self, "twin", tuple(int(t) for t in twin))
        object.__setattr__(self, "sign", tuple(int(s) for s in sign))
        if len(self.twin) != len(self.sign):
            raise InvalidCode("twin and sign must have the same length")
        if len(self.twin) % 2:
            raise InvalidCode("a code has an even number of positions")

    @property
    def n(self) -> int:
        return len(self.twin) // 2

    @classmethod
    def empty(cls) -> "SignedCrossingCode":
        return cls((), ())

    def mirror(self) -> "SignedCrossingCode":
        return SignedCrossingCode(self.twin, [-s for s in self.sign])

    def to_dict(self) -> dict:
        return {"n": self.n, "twin": list(self.twin), "sign": list(self.sign)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "SignedCrossingCode":
        try:
            code = cls(data["twin"], data["sign"])
        except (KeyError, TypeError) as exc:
            raise InvalidCode(f"malformed curve record: {exc}") from None
        if "n" in data and data["n"] != code.n:
            raise InvalidCode(f"n={data['n']} disagrees with {2 * code.n} positions")
        return code

    @classmethod
    def from_json(cls, text: str) -> "SignedCrossingCode":
        return cls.from_dict(json.loads(text))


@dataclass
class ValidationReport:
    in_range: bool = True
    involution: bool = True
    fixed_point_free: bool = True
    parity: bool = True
    sign_antisymmetry: bool = True
    realizable: bool = True
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            self.in_range
            and self.involution
            and self.fixed_point_free
            and self.parity
            and self.sign_antisymmetry
            and self.realizable
        )

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "in_range": self.in_range,
            "involution": self.involution,
            "fixed_point_free": self.fixed_point_free,
            "parity": self.parity,
            "sign_antisymmetry": self.sign_antisymmetry,
            "realizable": self.realizable,
            "problems": list(self.problems),
        }


def _structural_report(code: SignedCrossingCode) -> ValidationReport:
    rep = ValidationReport()
    N = len(code.twin)
    for i, t in enumerate(code.twin, 1):
        if not 1 <= t <= N:
            rep.in_range = False
            rep.problems.append(f"twin[{i}]={t} out of range 1..{N}")
    for i, s in enumerate(code.sign, 1):
        if s not in (-1, 1):
            rep.in_range = False
            rep.problems.append(f"sign[{i}]={s} is not +-1")
    if not rep.in_range:
        rep.involution = rep.fixed_point_free = rep.parity = rep.sign_antisymmetry = False
        return rep
    for i, t in enumerate(code.twin, 1):
        if t == i:
            rep.fixed_point_free = False
            rep.problems.append(f"twin[{i}]={i} is a fixed point")
        if code.twin[t - 1] != i:
            rep.involution = False
            rep.problems.append(f"twin[twin[{i}]]={code.twin[t - 1]} != {i}")
        if (t - i) % 2 == 0:
            rep.parity = False
            rep.problems.append(f"twin[{i}]={t} has the same parity as {i}")
        if code.sign[t - 1] != -code.sign[i - 1]:
            rep.sign_antisymmetry = False
            rep.problems.append(f"sign[{t}] is not -sign[{i}]")
    return rep


# -- rotation system ---------------------------------------------------------
#
# Arc k (1 <= k <= 2n) runs from position k to position k+1 (mod 2n); the
# basepoint sits on arc 2n.  Arc k owns two darts: 2(k-1) leaves the crossing
# at position k going forward, 2(k-1)+1 leaves the crossing at position k+1
# going backward.  alpha(d) = d ^ 1.


def _tail(k: int) -> int:
    return 2 * (k - 1)


def _head(k: int) -> int:
    return 2 * (k - 1) + 1


def _rotation(code: SignedCrossingCode) -> list[int]:
    """Counterclockwise successor of every dart around its crossing.

    Positive sign at position i means strand i points 90 degrees
    counterclockwise from strand twin[i].
    """
    N = len(code.twin)
    sigma = [0] * (2 * N)
    for i in range(1, N + 1):
        j = code.twin[i - 1]
        if i > j:
            continue
        prev_i = i - 1 if i > 1 else N
        prev_j = j - 1 if j > 1 else N
        out_i, in_i = _tail(i), _head(prev_i)
        out_j, in_j = _tail(j), _head(prev_j)
        if code.sign[i - 1] > 0:
            cyc = (out_j, out_i, in_j, in_i)
        else:
            cyc = (out_j, in_i, in_j, out_i)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            sigma[a] = b
    return sigma


def _faces(sigma: list[int]) -> tuple[list[list[int]], list[int]]:
    """Face cycles of phi = sigma o alpha; each face lies right of its darts."""
    face_of = [-1] * len(sigma)
    faces = []
    for start in range(len(sigma)):
        if face_of[start] >= 0:
            continue
        cyc = []
        d = start
        while face_of[d] < 0:
            face_of[d] = len(faces)
            cyc.append(d)
            d = sigma[d ^ 1]
        faces.append(cyc)
    return faces, face_of


def realizable(code: SignedCrossingCode) -> bool:
    """Whether the code embeds on the sphere (Euler: F = n + 2)."""
    if code.n == 0:
        return True
    faces, _ = _faces(_rotation(code))
    return len(faces) == code.n + 2


def validate(code: SignedCrossingCode) -> ValidationReport:
    rep = _structural_report(code)
    if not (rep.in_range and rep.involution and rep.fixed_point_free and rep.sign_antisymmetry):
        rep.realizable = False
        return rep
    rep.realizable = realizable(code)
    if not rep.realizable:
        faces, _ = _faces(_rotation(code))
        rep.problems.append(f"{len(faces)} faces, expected {code.n + 2} for a planar curve")
    return rep


def _require_realizable(code: SignedCrossingCode) -> None:
    rep = validate(code)
    if not rep.valid:
        raise NotRealizable("; ".join(rep.problems) or "code is not realizable")


@dataclass(frozen=True)
class PlaneMap:
    """Image graph of a curve as a combinatorial map.

    ``vertex_of[d]`` is the crossing (0-based, numbered by first position)
    at which dart ``d`` starts, ``rotation[d]`` is its counterclockwise
    successor and ``faces`` lists dart cycles, each face lying to the right
    of its darts.  For the crossing-free curve everything is empty and the
    two faces are implicit.
    """

    n: int
    vertex_positions: tuple[tuple[int, int], ...]
    vertex_of: tuple[int, ...]
    rotation: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...]
    outer_face: int

    @property
    def simple_curve(self) -> bool:
        return self.n == 0

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return 2 * self.n

    @property
    def num_faces(self) -> int:
        return 2 if self.n == 0 else len(self.faces)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces


def image_graph(code: SignedCrossingCode) -> PlaneMap:
    _require_realizable(code)
    N = len(code.twin)
    if N == 0:
        return PlaneMap(0, (), (), (), (), (), 0)
    vertex_at = {}
    positions = []
    for i in range(1, N + 1):
        j = code.twin[i - 1]
        if i < j:
            vertex_at[i] = vertex_at[j] = len(positions)
            positions.append((i, j))
    vertex_of = []
    for k in range(1, N + 1):
        nxt = k + 1 if k < N else 1
        vertex_of += [vertex_at[k], vertex_at[nxt]]
    sigma = _rotation(code)
    faces, face_of = _faces(sigma)
    return PlaneMap(
        n=code.n,
        vertex_positions=tuple(positions),
        vertex_of=tuple(vertex_of),
        rotation=tuple(sigma),
        faces=tuple(tuple(f) for f in faces),
        face_of=tuple(face_of),
        outer_face=face_of[_tail(N)],
    )


def rebase(code: SignedCrossingCode, arc: int, forward: bool = True) -> SignedCrossingCode:
    """Code read from a basepoint on ``arc``, walking forward or backward."""
    N = len(code.twin)
    if forward:
        new = [(p - arc - 1) % N + 1 for p in range(1, N + 1)]
    else:
        new = [(arc - p) % N + 1 for p in range(1, N + 1)]
    twin = [0] * N
    sign = [0] * N
    for p in range(1, N + 1):
        q = new[p - 1]
        twin[q - 1] = new[code.twin[p - 1] - 1]
        sign[q - 1] = code.sign[p - 1]
    return SignedCrossingCode(twin, sign)


def outer_basepoints(code: SignedCrossingCode) -> list[tuple[int, bool]]:
    """Every (arc, forward) choice that keeps the outer face on the right."""
    pm = image_graph(code)
    if pm.n == 0:
        return [(1, True)]
    N = 2 * pm.n
    out = []
    for k in range(1, N + 1):
        if pm.face_of[_tail(k)] == pm.outer_face:
            out.append((k, True))
        if pm.face_of[_head(k)] == pm.outer_face:
            out.append((k, False))
    return out


def equivalent_codes(code: SignedCrossingCode) -> frozenset[SignedCrossingCode]:
    """All valid codes of the same plane curve (outer-face basepoints only)."""
    if code.n == 0:
        _require_realizable(code)
        return frozenset([SignedCrossingCode.empty()])
    return frozenset(rebase(code, k, fwd) for k, fwd in outer_basepoints(code))


def canonical_code(code: SignedCrossingCode) -> SignedCrossingCode:
    return min(equivalent_codes(code))


def codes_isotopic(a: SignedCrossingCode, b: SignedCrossingCode) -> bool:
    if a.n != b.n:
        _require_realizable(a)
        _require_realizable(b)
        return False
    _require_realizable(b)
    return b in equivalent_codes(a)
