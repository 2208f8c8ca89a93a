"""
Bruhat-Tits Tree
Vertices of the tree of SL2(Q_p) as homothety classes of lattices, chambers,
the Weyl distance, the matrix action, apartment segments and axes, all
restricted to finite balls.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import networkx as nx
from sympy import isprime

from config import config
from exact_arith import INFINITY, InsufficientPrecision, LabError, to_fraction, unit_residue, vp
from quaternion import Mat2Padic

logger = logging.getLogger("BruhatTree")


class NotHyperbolic(LabError):
    reason = "NotHyperbolic"


def _reduce(x, p, a):
    """The digits of the rational x at exponents below a, as a rational in [0, p^a)."""
    x = to_fraction(x)
    if x == 0:
        return Fraction(0)
    v = vp(x, p)
    if v >= a:
        return Fraction(0)
    return Fraction(unit_residue(x, p, a - v)) * Fraction(p) ** v


# ==================================================================
# VERTICES
# ==================================================================
@dataclass(frozen=True, order=True)
class Vertex:
    """The class of the lattice with column basis [[p^a, c], [0, 1]]."""
    p: int
    a: int
    c: Fraction = Fraction(0)

    def __post_init__(self):
        c = to_fraction(self.c)
        if not 0 <= c < Fraction(self.p) ** self.a or _reduce(c, self.p, self.a) != c:
            raise ValueError(f"c = {c} is not reduced mod {self.p}^{self.a}")
        object.__setattr__(self, "c", c)

    @property
    def type(self):
        return self.a % 2

    def matrix(self):
        return [[Fraction(self.p) ** self.a, self.c], [Fraction(0), Fraction(1)]]

    def digits(self):
        """Base-p digits of c, most significant first, with a point before negative exponents."""
        if self.c == 0:
            return "0"
        low = min(0, vp(self.c, self.p))
        n = int(self.c * Fraction(self.p) ** (-low))
        out = []
        while n:
            out.append(str(n % self.p))
            n //= self.p
        out += ["0"] * max(0, -low + 1 - len(out))
        text = "".join(reversed(out))
        if low < 0:
            text = text[:low] + "." + text[low:]
        return text

    def label(self):
        return f"({self.a}, {self.digits()})"

    def __str__(self):
        return self.label()


def base_vertex(p):
    if not isprime(p):
        raise ValueError(f"{p} is not a prime")
    return Vertex(p, 0)


def neighbors(v):
    p, a = v.p, v.a
    step = Fraction(p) ** a
    children = [Vertex(p, a + 1, v.c + j * step) for j in range(p)]
    return children + [Vertex(p, a - 1, _reduce(v.c, p, a - 1))]


def distance(u, v):
    if u.p != v.p:
        raise ValueError("vertices of different trees")
    A = v.a - u.a
    C = (v.c - u.c) / Fraction(u.p) ** u.a
    m = min(A, vp(C, u.p) if C else INFINITY, 0)
    return A - 2 * m


# ==================================================================
# CANONICAL FORM AND ACTION
# ==================================================================
def _canonical_rational(p, a_, b_, c_, d_):
    det = a_ * d_ - b_ * c_
    if det == 0:
        raise ValueError("singular matrix has no lattice class")
    if d_ != 0 and (c_ == 0 or vp(d_, p) <= vp(c_, p)):
        top, bottom = b_, d_
    else:
        top, bottom = a_, c_
    a = vp(det, p) - 2 * vp(bottom, p)
    return Vertex(p, a, _reduce(top / bottom, p, a))


def _canonical_padic(m, det):
    p = m.p
    c_, d_ = m.c, m.d
    if c_.is_zero and d_.is_zero:
        raise InsufficientPrecision("bottom row is zero to precision")
    if not d_.is_zero and (c_.is_zero or d_.val <= c_.val):
        top, bottom, other = m.b, d_, c_
    else:
        top, bottom, other = m.a, c_, d_
    if other.is_zero and other.absprec < bottom.val:
        raise InsufficientPrecision("cannot decide the pivot of the bottom row")
    if det.is_zero:
        raise InsufficientPrecision(f"determinant is 0 mod {p}^{det.val}")
    a = det.val - 2 * bottom.val
    t = top / bottom
    if t.absprec < a:
        raise InsufficientPrecision(f"vertex needs {a} digits, only {t.absprec} known")
    return Vertex(p, a, _reduce(t.to_rational(), p, a))


def _rows(m):
    if hasattr(m, "tolist"):
        m = m.tolist()
    (a, b), (c, d) = m
    return tuple(to_fraction(e) for e in (a, b, c, d))


def vertex_canonical(m, p=None):
    """Lattice class spanned by the columns of m: a Mat2Padic, or a rational matrix with p given."""
    if isinstance(m, Mat2Padic):
        return _canonical_padic(m, m.det())
    if p is None:
        raise ValueError("rational matrices need the prime")
    return _canonical_rational(p, *_rows(m))


@lru_cache(maxsize=65536)
def _vertex_padic(v):
    return Mat2Padic.from_rational(v.matrix(), v.p, config.VERTEX_PRECISION)


def _denominator_depth(g):
    vals = [e.val for e in g.entries if not e.is_zero]
    return max(0, -min(vals, default=0))


def _guard(g, v):
    need = distance(base_vertex(v.p), v) + config.TREE_GUARD_SLACK + _denominator_depth(g)
    if g.min_absprec() < need:
        raise InsufficientPrecision(
            f"acting on {v} needs entries known mod {v.p}^{need}, have {g.min_absprec()}"
        )


def act(g, v):
    """The class of g . M_v."""
    if isinstance(g, Mat2Padic):
        if g.p != v.p:
            raise ValueError(f"matrix over Q_{g.p} acting on the tree of Q_{v.p}")
        _guard(g, v)
        det = g.det() * Fraction(v.p) ** v.a
        return _canonical_padic(g @ _vertex_padic(v), det)
    a, b, c, d = _rows(g)
    (m11, m12), (_, m22) = v.matrix()
    return _canonical_rational(v.p, a * m11, a * m12 + b * m22, c * m11, c * m12 + d * m22)


def displacement(g, v):
    return distance(v, act(g, v))


# ==================================================================
# CHAMBERS AND WEYL DISTANCE
# ==================================================================
@dataclass(frozen=True, order=True)
class Chamber:
    v0: Vertex
    v1: Vertex

    def __post_init__(self):
        if self.v0.type != 0 or self.v1.type != 1 or distance(self.v0, self.v1) != 1:
            raise ValueError(f"{self.v0}, {self.v1} is not a chamber")

    @classmethod
    def of(cls, u, v):
        return cls(u, v) if u.type == 0 else cls(v, u)

    @property
    def vertices(self):
        return (self.v0, self.v1)

    def vertex(self, t):
        return self.v0 if t == 0 else self.v1

    def image(self, g):
        return Chamber.of(act(g, self.v0), act(g, self.v1))

    def __str__(self):
        return f"{{{self.v0}, {self.v1}}}"


def base_chamber(p):
    """The edge fixed by the Iwahori subgroup of matrices upper triangular mod p."""
    return Chamber(Vertex(p, 0), Vertex(p, -1))


@dataclass(frozen=True)
class WeylElem:
    """The reduced alternating word of the given length starting with s_first."""
    length: int = 0
    first: int | None = None

    def __post_init__(self):
        if self.length < 0 or (self.length == 0) != (self.first is None):
            raise ValueError(f"bad Weyl element ({self.length}, {self.first})")

    @classmethod
    def identity(cls):
        return cls()

    @property
    def last(self):
        if not self.length:
            return None
        return (self.first + self.length - 1) % 2

    def letters(self):
        return [(self.first + i) % 2 for i in range(self.length)]

    def inverse(self):
        return WeylElem(self.length, self.last)

    def times(self, t):
        """Right multiplication by s_t."""
        if not self.length:
            return WeylElem(1, t)
        if self.last == t:
            n = self.length - 1
            return WeylElem(n, self.first if n else None)
        return WeylElem(self.length + 1, self.first)

    def sort_key(self):
        return (self.length, -1 if self.first is None else self.first)

    def __str__(self):
        return "".join(f"s{t}" for t in self.letters()) or "1"


def weyl_distance(C, D):
    n2 = distance(C.v0, D.v0) + distance(C.v1, D.v1)
    n = n2 // 2
    if n == 0:
        return WeylElem.identity()
    near = [min(distance(C.vertex(t), y) for y in D.vertices) for t in (0, 1)]
    return WeylElem(n, 0 if near[0] < near[1] else 1)


# ==================================================================
# BALLS
# ==================================================================
@dataclass(frozen=True, eq=False)
class Ball:
    base: Vertex
    radius: int
    graph: nx.Graph

    @property
    def p(self):
        return self.base.p

    @property
    def vertices(self):
        return list(self.graph.nodes)

    def __contains__(self, v):
        return v in self.graph

    def __len__(self):
        return self.graph.number_of_nodes()

    def depth(self, v):
        return self.graph.nodes[v]["depth"]

    def expected_size(self):
        p, r = self.p, self.radius
        return 1 + (p + 1) * (p ** r - 1) // (p - 1)


def ball_enumerate(base, r):
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if not isprime(base.p):
        raise ValueError(f"{base.p} is not a prime")
    graph = nx.Graph()
    graph.add_node(base, depth=0)
    frontier = [base]
    for depth in range(1, r + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(v):
                if w not in graph:
                    graph.add_node(w, depth=depth)
                    nxt.append(w)
                graph.add_edge(v, w)
        frontier = nxt
    ball = Ball(base, r, graph)
    logger.debug(f"ball of radius {r} around {base}: {len(ball)} vertices")
    return ball


def chambers_in(ball):
    return sorted(Chamber.of(u, v) for u, v in ball.graph.edges())


TYPE_COLORS = {0: "lightblue", 1: "salmon"}
ORBIT_PALETTE = ["gold", "palegreen", "plum", "lightcyan", "orange", "pink", "khaki", "lightgrey"]


def to_dot(ball, filename=None, orbits=None):
    """DOT text of the ball; vertices colored by type, or by orbit index when given."""
    lookup = {v: i for i, v in enumerate(ball.vertices)}
    lines = ["graph ball", "{"]
    for v, i in lookup.items():
        if orbits is not None and v in orbits:
            color = ORBIT_PALETTE[orbits[v] % len(ORBIT_PALETTE)]
        else:
            color = TYPE_COLORS[v.type]
        lines.append(f'    n{i} [label="{v.label()}", style=filled, fillcolor={color}];')
    for u, w in ball.graph.edges():
        lines.append(f"    n{lookup[u]} -- n{lookup[w]};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if filename:
        with open(filename, "w") as f:
            f.write(text)
    return text


# ==================================================================
# APARTMENT SEGMENTS
# ==================================================================
@dataclass(frozen=True)
class ApartmentSegment:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        for u, v in zip(vs, vs[1:]):
            if distance(u, v) != 1:
                raise ValueError(f"{u} and {v} are not adjacent")
        for u, w in zip(vs, vs[2:]):
            if u == w:
                raise ValueError("segment backtracks")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def index(self, v):
        return self.vertices.index(v)

    def chambers(self):
        return [Chamber.of(u, v) for u, v in zip(self.vertices, self.vertices[1:])]

    def image(self, g):
        return ApartmentSegment(tuple(act(g, v) for v in self.vertices))

    def reversed(self):
        return ApartmentSegment(self.vertices[::-1])

    def to_list(self):
        return [v.label() for v in self.vertices]


def standard_segment(p, r):
    """The standard apartment inside ball(r): vertices (k, 0), k = -r..r."""
    return ApartmentSegment(tuple(Vertex(p, k) for k in range(-r, r + 1)))


def translation_on(g, seg):
    """The constant index shift of g along seg, or None if g does not translate it."""
    lookup = {v: i for i, v in enumerate(seg)}
    shift = None
    for i, v in enumerate(seg):
        j = lookup.get(act(g, v))
        if j is None:
            continue
        if shift is None:
            shift = j - i
        elif j - i != shift:
            return None
    if not shift:
        return None
    for i, v in enumerate(seg):
        if 0 <= i + shift < len(seg) and act(g, v) != seg.vertices[i + shift]:
            return None
    return shift


def is_reflection_on(g, seg):
    """g maps seg into itself reversed about a vertex: index(g v_i) = c - i with c even."""
    lookup = {v: i for i, v in enumerate(seg)}
    images = [act(g, v) for v in seg]
    if any(w.type != v.type for v, w in zip(seg, images)):
        return False
    inside = [(i, lookup[w]) for i, w in enumerate(images) if w in lookup]
    if len(inside) < 2:
        return False
    centres = {i + j for i, j in inside}
    if len(centres) != 1:
        return False
    c = centres.pop()
    if c % 2:
        return False
    return all((0 <= c - i < len(seg)) == (w in lookup) for i, w in enumerate(images))


def axis(g, ball):
    """The displacement-minimizing path of a hyperbolic g inside the ball, oriented along g."""
    disp = {v: displacement(g, v) for v in ball.vertices}
    m = min(disp.values())
    if m == 0:
        raise NotHyperbolic("g fixes a vertex of the ball")
    on_axis = [v for v in ball.vertices if disp[v] == m]
    sub = ball.graph.subgraph(on_axis)
    ends = [v for v in sub if sub.degree(v) == 1]
    if len(on_axis) < 2 or not nx.is_tree(sub) or len(ends) != 2:
        raise NotHyperbolic(f"minimal displacement {m} is not attained along a path; ball too small?")
    path = nx.shortest_path(sub, *sorted(ends))
    seg = ApartmentSegment(tuple(path))
    if len(seg) > m and act(g, seg.vertices[0]) != seg.vertices[m]:
        seg = seg.reversed()
    if translation_on(g, seg) != m:
        raise NotHyperbolic(f"g does not translate its minimal set by {m}; ball too small?")
    logger.debug(f"axis with translation length {m} through {len(seg)} ball vertices")
    return seg
