"""Built-in quivers with their known mutation periodicities.

Every entry carries machine-checkable claims: an index sequence (with its
slice structure), a relabeling, and the level at which periodicity is
asserted ("matrix" or "seed").  Text notes record the expected lengths
in terms of Coxeter numbers; they parameterize nothing.

Indexing is 0-based internally; labels keep the human (column,row) or
1-based names for display and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .periodicity import NuPeriodSpec, build_j_period, compose
from .seeds import ExchangeMatrix, Quiver


@dataclass(frozen=True)
class Claim:
    label: str
    slices: tuple  # tuple[tuple[int, ...], ...]
    nu: tuple
    level: str  # "matrix" | "seed"
    note: str = ""

    @property
    def sequence(self) -> tuple:
        return tuple(k for sl in self.slices for k in sl)

    def spec(self) -> NuPeriodSpec:
        return NuPeriodSpec(self.sequence, self.nu)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "slices": [[k + 1 for k in sl] for sl in self.slices],
            "nu": [v + 1 for v in self.nu],
            "level": self.level,
            "note": self.note,
        }


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    matrix: ExchangeMatrix
    labels: tuple
    sequences: dict
    permutations: dict
    claims: tuple
    metadata: dict = field(default_factory=dict)
    layout: tuple = ()  # optional pinned (x, y) per vertex
    figure_transcribed: bool = False

    @property
    def n(self) -> int:
        return self.matrix.n

    def quiver(self) -> Quiver:
        return Quiver.from_matrix(self.matrix)

    def seed_period_claim(self) -> Claim:
        """The identity-relabeling seed period, if the entry has one."""
        for claim in self.claims:
            if claim.level == "seed" and all(
                claim.nu[i] == i for i in range(len(claim.nu))
            ):
                return claim
        raise KeyError(f"entry {self.name} carries no seed-period claim")

    def has_seed_period(self) -> bool:
        try:
            self.seed_period_claim()
            return True
        except KeyError:
            return False

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "n": self.n,
            "B": self.matrix.to_json(),
            "quiver": self.quiver().to_json() if self.matrix.is_skew_symmetric() else None,
            "labels": list(self.labels),
            "sequences": {
                k: [[i + 1 for i in sl] for sl in v] for k, v in self.sequences.items()
            },
            "permutations": {k: [v + 1 for v in p] for k, p in self.permutations.items()},
            "claims": [c.to_json() for c in self.claims],
            "metadata": self.metadata,
            "layout": [list(p) for p in self.layout],
            "figure_transcribed": self.figure_transcribed,
        }


def _matrix_from_arrows(n: int, arrows) -> ExchangeMatrix:
    rows = [[0] * n for _ in range(n)]
    for i, j, *rest in (list(a) for a in arrows):
        m = rest[0] if rest else 1
        rows[i][j] += m
        rows[j][i] -= m
    return ExchangeMatrix.from_rows(rows)


def _repeat(slices, times: int) -> tuple:
    return tuple(tuple(sl) for _ in range(times) for sl in slices)


# -- type A path -------------------------------------------------------------


def _a_path_entry(n: int) -> CatalogEntry:
    # sources at odd 1-based positions, arrows into the even neighbors
    arrows = []
    for i in range(0, n, 2):  # 0-based even = 1-based odd
        if i - 1 >= 0:
            arrows.append((i, i - 1))
        if i + 1 < n:
            arrows.append((i, i + 1))
    B = _matrix_from_arrows(n, arrows)
    i_plus = tuple(range(0, n, 2))
    i_minus = tuple(range(1, n, 2))
    refl = tuple(n - 1 - i for i in range(n))
    ident = tuple(range(n))
    full = (i_plus, i_minus) if i_minus else (i_plus,)
    seqs = {"plus": (i_plus,), "minus": (i_minus,) if i_minus else (), "full": full}
    perms = {"id": ident, "reflection": refl}
    claims = [
        Claim("full-matrix", full, ident, "matrix", "alternating bipartite step"),
    ]
    if n % 2 == 1:
        claims += [
            Claim(
                "seed-half",
                _repeat(full, (n + 3) // 2),
                refl,
                "seed",
                f"(n+3)/2 = {(n + 3) // 2} repetitions under the reflection",
            ),
            Claim(
                "seed-full",
                _repeat(full, n + 3),
                ident,
                "seed",
                f"n+3 = {n + 3} repetitions",
            ),
        ]
    else:
        claims += [
            Claim("plus-matrix", (i_plus,), refl, "matrix", "half step under reflection"),
            Claim(
                "seed-half",
                _repeat(full, n // 2 + 1) + (i_plus,),
                refl,
                "seed",
                f"n/2+1 = {n // 2 + 1} repetitions plus the odd half",
            ),
            Claim(
                "seed-full",
                _repeat(full, n + 3),
                ident,
                "seed",
                f"n+3 = {n + 3} repetitions",
            ),
        ]
    return CatalogEntry(
        name=f"A{n}",
        description=f"Alternating path quiver ({n} vertices)",
        matrix=B,
        labels=tuple(str(i + 1) for i in range(n)),
        sequences=seqs,
        permutations=perms,
        claims=tuple(claims),
        metadata={
            "coxeter_number": n + 1,
            "expected_seed_period_repetitions": n + 3,
        },
        layout=tuple((80 * i, 0) for i in range(n)),
    )


# -- (A4, level 4) grid ------------------------------------------------------


def _a4_level4_entry() -> CatalogEntry:
    cols, rows = 4, 3

    def idx(i, j):  # i: column 1..4, j: row 1..3
        return (j - 1) * cols + (i - 1)

    def sign(i, j):
        return 1 if (i + j) % 2 == 0 else -1

    arrows = []
    for j in range(1, rows + 1):
        for i in range(1, cols + 1):
            if j < rows:  # vertical edge (i,j)-(i,j+1): plus end points in
                if sign(i, j) > 0:
                    arrows.append((idx(i, j), idx(i, j + 1)))
                else:
                    arrows.append((idx(i, j + 1), idx(i, j)))
            if i < cols:  # horizontal edge: minus end points in
                if sign(i, j) < 0:
                    arrows.append((idx(i, j), idx(i + 1, j)))
                else:
                    arrows.append((idx(i + 1, j), idx(i, j)))
    B = _matrix_from_arrows(cols * rows, arrows)
    n = cols * rows
    i_plus = tuple(
        idx(i, j) for j in range(1, rows + 1) for i in range(1, cols + 1) if sign(i, j) > 0
    )
    i_minus = tuple(
        idx(i, j) for j in range(1, rows + 1) for i in range(1, cols + 1) if sign(i, j) < 0
    )
    nu = tuple(idx(cols + 1 - i, j) for j in range(1, rows + 1) for i in range(1, cols + 1))
    omega = tuple(idx(i, rows + 1 - j) for j in range(1, rows + 1) for i in range(1, cols + 1))
    nuomega = compose(nu, omega)
    ident = tuple(range(n))
    full = (i_plus, i_minus)
    claims = (
        Claim("plus-matrix", (i_plus,), nu, "matrix", "single slice under reflection"),
        Claim("full-matrix", full, ident, "matrix", "one bipartite sweep"),
        Claim(
            "seed-half",
            _repeat(full, 4) + (i_plus,),
            nuomega,
            "seed",
            "4 sweeps plus a half under both reflections",
        ),
        Claim("seed-full", _repeat(full, 9), ident, "seed", "9 = 5 + 4 sweeps"),
    )
    labels = tuple(
        f"({i},{j})" for j in range(1, rows + 1) for i in range(1, cols + 1)
    )
    return CatalogEntry(
        name="A4-level4",
        description="12-vertex square-grid quiver (rank-4 row, 3 levels)",
        matrix=B,
        labels=labels,
        sequences={"plus": (i_plus,), "minus": (i_minus,), "full": full},
        permutations={
            "id": ident,
            "nu": nu,
            "omega": omega,
            "nuomega": nuomega,
        },
        claims=claims,
        metadata={
            "coxeter_number": 5,
            "level": 4,
            "expected_seed_period_repetitions": 9,
        },
        layout=tuple(
            (80 * ((k % cols) + 1), -80 * ((k // cols) + 1)) for k in range(n)
        ),
    )


# -- (B4, level 4) -----------------------------------------------------------


def _b4_level4_entry() -> CatalogEntry:
    # circle columns 1,2,3,5,6,7 with rows 1..3; dot column 4 with rows 1..7
    verts = []
    for i in (1, 2, 3, 5, 6, 7):
        for j in (1, 2, 3):
            verts.append((i, j))
    for j in range(1, 8):
        verts.append((4, j))
    index = {v: k for k, v in enumerate(verts)}
    n = len(verts)

    def sign(i, j):
        if i == 4:
            return 1 if j % 2 == 1 else -1
        if i in (1, 2, 3):
            return 1 if (i + j) % 2 == 1 else -1
        return 1 if (i + j) % 2 == 0 else -1

    arrows_labeled = [
        # row 1 horizontals
        ((1, 1), (2, 1)), ((3, 1), (2, 1)), ((4, 2), (3, 1)), ((4, 2), (5, 1)),
        ((6, 1), (5, 1)), ((6, 1), (7, 1)),
        # row 2 horizontals
        ((2, 2), (1, 2)), ((2, 2), (3, 2)), ((4, 4), (3, 2)), ((4, 4), (5, 2)),
        ((5, 2), (6, 2)), ((7, 2), (6, 2)),
        # row 3 horizontals
        ((1, 3), (2, 3)), ((3, 3), (2, 3)), ((4, 6), (3, 3)), ((4, 6), (5, 3)),
        ((6, 3), (5, 3)), ((6, 3), (7, 3)),
        # dot column verticals
        ((4, 1), (4, 2)), ((4, 3), (4, 2)), ((4, 3), (4, 4)), ((4, 5), (4, 4)),
        ((4, 5), (4, 6)), ((4, 7), (4, 6)),
        # diagonals between circle column 3/5 and the dot column
        ((3, 1), (4, 1)), ((3, 1), (4, 3)), ((3, 3), (4, 5)), ((3, 3), (4, 7)),
        ((5, 2), (4, 3)), ((5, 2), (4, 5)),
        # circle column verticals
        ((1, 2), (1, 1)), ((2, 1), (2, 2)), ((3, 2), (3, 1)),
        ((5, 1), (5, 2)), ((6, 2), (6, 1)), ((7, 1), (7, 2)),
        ((1, 2), (1, 3)), ((2, 3), (2, 2)), ((3, 2), (3, 3)),
        ((5, 3), (5, 2)), ((6, 2), (6, 3)), ((7, 3), (7, 2)),
    ]
    arrows = [(index[a], index[b]) for a, b in arrows_labeled]
    B = _matrix_from_arrows(n, arrows)

    dot_plus = tuple(index[(4, j)] for j in (1, 3, 5, 7))
    dot_minus = tuple(index[(4, j)] for j in (2, 4, 6))
    circ_plus = tuple(index[v] for v in verts if v[0] != 4 and sign(*v) > 0)
    circ_minus = tuple(index[v] for v in verts if v[0] != 4 and sign(*v) < 0)

    nu = [0] * n
    omega = [0] * n
    for (i, j), k in index.items():
        nu[k] = index[(8 - i, j)] if i != 4 else k
        omega[k] = index[(i, (4 if i != 4 else 8) - j)]
    nu = tuple(nu)
    omega = tuple(omega)
    nuomega = compose(nu, omega)
    ident = tuple(range(n))

    half = (dot_plus, circ_plus, dot_minus)
    full = half + (dot_plus, circ_minus, dot_minus)
    claims = (
        Claim("half-matrix", half, nu, "matrix", "half sweep under reflection"),
        Claim("full-matrix", full, ident, "matrix", "one full sweep"),
        Claim(
            "seed-half",
            _repeat(full, 5) + half,
            nuomega,
            "seed",
            "5 sweeps plus a half under both reflections",
        ),
        Claim("seed-full", _repeat(full, 11), ident, "seed", "11 = 7 + 4 sweeps"),
    )
    layout = []
    for (i, j) in verts:
        if i == 4:
            layout.append((80 * i, -40 * j - 20))
        else:
            layout.append((80 * i, -80 * j))
    return CatalogEntry(
        name="B4-level4",
        description="25-vertex quiver for the rank-4 doubled-column family, 4 levels",
        matrix=B,
        labels=tuple(f"({i},{j})" for i, j in verts),
        sequences={
            "dot_plus": (dot_plus,),
            "dot_minus": (dot_minus,),
            "circ_plus": (circ_plus,),
            "circ_minus": (circ_minus,),
            "half": half,
            "full": full,
        },
        permutations={"id": ident, "nu": nu, "omega": omega, "nuomega": nuomega},
        claims=claims,
        metadata={
            "dual_coxeter_number": 7,
            "level": 4,
            "expected_seed_period_repetitions": 11,
        },
        layout=tuple(layout),
        figure_transcribed=True,
    )


# -- sine-Gordon D13 ---------------------------------------------------------


def _sine_gordon_entry() -> CatalogEntry:
    # vertices: 0..5 on the 6-cycle of circle vertices, 6..12 the shared dots
    # dots (1-based figure names 7..13 map to 6..12 here)
    n = 13

    def d(v1b):  # dot by 1-based figure label
        return v1b - 1

    arrows = [
        # shared dot arrows
        (d(8), d(7)), (d(8), d(9)), (d(10), d(9)), (d(10), d(11)),
        (d(12), d(11)), (d(13), d(11)),
        # circle vertex 1..6 attachments (0-based 0..5)
        (d(7), 0),
        (1, d(8)), (d(9), 1),
        (2, d(10)), (d(11), 2),
        (3, d(12)), (d(11), 3), (3, d(13)),
        (4, d(10)), (d(9), 4),
        (d(7), 5), (5, d(8)),
    ]
    B = _matrix_from_arrows(n, arrows)
    dot_plus = (d(8), d(10), d(12), d(13))
    dot_minus = (d(7), d(9), d(11))
    rot = tuple([1, 2, 3, 4, 5, 0] + list(range(6, 13)))
    omega = tuple(range(11)) + (12, 11)  # swap the two top dots
    nuomega = compose(rot, omega)
    ident = tuple(range(n))

    def block(c):
        return (dot_plus, (c,), dot_minus)

    base = block(0)
    full = tuple(sl for c in range(6) for sl in block(c))
    claims = (
        Claim("block-matrix", base, rot, "matrix", "one block under the 6-cycle"),
        Claim("full-matrix", full, ident, "matrix", "all six blocks"),
        Claim(
            "seed-half",
            _repeat(full, 2) + base,
            nuomega,
            "seed",
            "2 full rounds plus a block under cycle and top swap",
        ),
        Claim(
            "seed-full",
            _repeat(full, 13),
            ident,
            "seed",
            "13 = (12+2+10+2)/2 rounds",
        ),
    )
    layout = [(-120, 0), (-60, -104), (60, -104), (120, 0), (60, 104), (-60, 104)]
    layout += [(0, -90), (0, -60), (0, -30), (0, 0), (0, 30), (0, 60), (-30, 90)]
    return CatalogEntry(
        name="sine-gordon-D13",
        description="13-vertex quiver from the sine-Gordon family (mutation class D13)",
        matrix=B,
        labels=tuple(str(i + 1) for i in range(n)),
        sequences={
            "dot_plus": (dot_plus,),
            "dot_minus": (dot_minus,),
            "block1": base,
            "full": full,
        },
        permutations={"id": ident, "rot": rot, "omega": omega, "nuomega": nuomega},
        claims=claims,
        metadata={"expected_seed_period_repetitions": 13},
        layout=tuple(layout),
        figure_transcribed=True,
    )


# -- del Pezzo 3 -------------------------------------------------------------


def _del_pezzo3_entry() -> CatalogEntry:
    n = 6
    arrows = [
        (4, 3), (5, 4), (2, 1), (1, 0), (4, 1, 2), (0, 4), (2, 4),
        (1, 3), (1, 5), (3, 0), (5, 2), (3, 5), (0, 2),
    ]
    B = _matrix_from_arrows(n, arrows)
    rho = tuple([1, 2, 3, 4, 5, 0])
    rho2 = compose(rho, rho)
    ident = tuple(range(n))
    cycle = tuple((k,) for k in range(6))
    claims = (
        Claim("pair-matrix", ((0,), (1,)), rho2, "matrix", "two steps under the square of the rotation"),
        Claim("cycle-matrix", cycle, ident, "matrix", "full 6-cycle"),
    )
    import math

    layout = tuple(
        (int(120 * math.cos(math.pi / 2 - k * math.pi / 3)), int(120 * math.sin(math.pi / 2 - k * math.pi / 3)))
        for k in range(6)
    )
    return CatalogEntry(
        name="delPezzo3",
        description="6-vertex quiver from the third del Pezzo surface gauge theory",
        matrix=B,
        labels=tuple(str(i + 1) for i in range(n)),
        sequences={"pair": ((0,), (1,)), "cycle": cycle},
        permutations={"id": ident, "rho": rho, "rho2": rho2},
        claims=claims,
        metadata={},
        layout=layout,
    )


# -- level-4 tamely laced quiver (five glued copies) --------------------------


def _tamely_laced_entry() -> CatalogEntry:
    # 19 shared dot vertices 0..18 (bottom to top), then circle triples
    # (low, mid, high) for copies 1..5 at indices 19 + 3*(q-1) + p
    n_dots = 19
    n = n_dots + 15

    def circ(q, p):  # copy q in 1..5, p in 0(low),1(mid),2(high)
        return n_dots + 3 * (q - 1) + p

    arrows = []
    for m in range(0, n_dots, 2):  # even dots point at odd neighbors
        if m - 1 >= 0:
            arrows.append((m, m - 1))
        if m + 1 < n_dots:
            arrows.append((m, m + 1))

    # circle-circle arrows: odd copies mid->low, mid->high; even copies inward
    for q in (1, 3, 5):
        arrows += [(circ(q, 1), circ(q, 0)), (circ(q, 1), circ(q, 2))]
    for q in (2, 4):
        arrows += [(circ(q, 0), circ(q, 1)), (circ(q, 2), circ(q, 1))]

    # circle-dot attachments per copy: (out-dots, in-dots) per position
    attach = {
        1: {0: (list(range(0, 9, 2)), [1, 3, 5, 7]), 1: ([], [9]), 2: (list(range(10, 19, 2)), [11, 13, 15, 17])},
        2: {0: ([2, 4, 6], [1, 3, 5, 7]), 1: ([8, 10], [9]), 2: ([12, 14, 16], [11, 13, 15, 17])},
        3: {0: ([2, 4, 6], [3, 5]), 1: ([8, 10], [7, 9, 11]), 2: ([12, 14, 16], [13, 15])},
        4: {0: ([4], [3, 5]), 1: ([6, 8, 10, 12], [7, 9, 11]), 2: ([14], [13, 15])},
        5: {0: ([4], []), 1: ([6, 8, 10, 12], [5, 7, 9, 11, 13]), 2: ([14], [])},
    }
    for q, per_pos in attach.items():
        for p, (outs, ins) in per_pos.items():
            for m in outs:
                arrows.append((circ(q, p), m))
            for m in ins:
                arrows.append((m, circ(q, p)))

    B = _matrix_from_arrows(n, arrows)

    sigma = {1: 3, 2: 1, 3: 5, 4: 2, 5: 4}
    nu = list(range(n))
    for q in range(1, 6):
        for p in range(3):
            nu[circ(q, p)] = circ(sigma[q], p)
    nu = tuple(nu)
    ident = tuple(range(n))

    dot_plus = tuple(range(0, n_dots, 2))
    dot_minus = tuple(range(1, n_dots, 2))
    # circle signs: odd copies (-, +, -), even copies (+, -, +)
    circ_plus = {q: tuple(circ(q, p) for p in ((1,) if q % 2 else (0, 2))) for q in range(1, 6)}
    circ_minus = {q: tuple(circ(q, p) for p in ((0, 2) if q % 2 else (1,))) for q in range(1, 6)}

    base = (dot_plus + circ_plus[1], dot_minus + circ_plus[4])
    spec = NuPeriodSpec(tuple(k for sl in base for k in sl), nu)
    full_seq = build_j_period(spec)
    # slice structure of the concatenation: translate base slices by nu powers
    full = []
    power = ident
    for _ in range(5):
        full.append(tuple(power[k] for k in base[0]))
        full.append(tuple(power[k] for k in base[1]))
        power = compose(nu, power)
    claims = (
        Claim("base-matrix", base, nu, "matrix", "one double slice under the copy rotation"),
        Claim("full-matrix", tuple(full), ident, "matrix", "all five rotations, figure-transcribed"),
    )
    labels = [f"d{m + 1}" for m in range(n_dots)]
    for q in range(1, 6):
        for p, name in enumerate(("low", "mid", "high")):
            labels.append(f"c{q}.{name}")
    layout = [(0, 30 * m - 270) for m in range(n_dots)]
    for q in range(1, 6):
        for p in range(3):
            layout.append((-250 + 100 * (q - 1) + 10 * p, 320 + 60 * p))
    return CatalogEntry(
        name="tamely-laced-level4",
        description="34-vertex level-4 quiver glued from five copies with a shared column",
        matrix=B,
        labels=tuple(labels),
        sequences={
            "dot_plus": (dot_plus,),
            "dot_minus": (dot_minus,),
            "base": base,
            "full": tuple(full),
        },
        permutations={"id": ident, "nu": nu},
        claims=claims,
        metadata={"level": 4, "copies": 5},
        layout=tuple(layout),
        figure_transcribed=True,
    )


_BUILDERS = {
    "A4-level4": _a4_level4_entry,
    "B4-level4": _b4_level4_entry,
    "sine-gordon-D13": _sine_gordon_entry,
    "delPezzo3": _del_pezzo3_entry,
    "tamely-laced-level4": _tamely_laced_entry,
}

for _n in range(1, 7):
    _BUILDERS[f"A{_n}"] = (lambda n: (lambda: _a_path_entry(n)))(_n)


_CACHE: dict = {}


def entry_names() -> list:
    return sorted(_BUILDERS)


def get_entry(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(entry_names())}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]
