"""The bracketed tangle category: slice-word diagrams with bracket trees.

Objects are binary bracket trees over point leaves (None is the empty
object).  Morphisms are slice words read top to bottom; each slice addresses
a node path into the running boundary tree.  Framing is carried by explicit
kink slices (blackboard framing).  Planar isotopy is never normalized away
syntactically -- the evaluation functor is the arbiter of equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

LEAF = "."

Tree = object  # LEAF | tuple(Tree, Tree) | None
Path = tuple[int, ...]


class TangleError(ValueError):
    pass


class SliceError(TangleError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"slice {index}: {message}")


# ---------------------------------------------------------------------------
# bracket trees


def leaves(tree: Tree) -> int:
    if tree is None:
        return 0
    if tree == LEAF:
        return 1
    return leaves(tree[0]) + leaves(tree[1])


def subtree(tree: Tree, path: Path) -> Tree:
    for step in path:
        if not isinstance(tree, tuple):
            raise TangleError(f"path {list(path)} leaves the tree")
        tree = tree[step]
    return tree


def replace(tree: Tree, path: Path, new: Tree) -> Tree:
    if not path:
        return new
    if not isinstance(tree, tuple):
        raise TangleError(f"path {list(path)} leaves the tree")
    l, r = tree
    if path[0] == 0:
        return (replace(l, path[1:], new), r)
    return (l, replace(r, path[1:], new))


def remove_node(tree: Tree, path: Path) -> Tree:
    """Delete the subtree at path; its sibling replaces the parent."""
    if not path:
        return None
    parent = subtree(tree, path[:-1])
    sibling = parent[1 - path[-1]]
    return replace(tree, path[:-1], sibling)


def leaf_paths(tree: Tree) -> list[Path]:
    out: list[Path] = []

    def walk(t: Tree, p: Path):
        if t is None:
            return
        if t == LEAF:
            out.append(p)
            return
        walk(t[0], p + (0,))
        walk(t[1], p + (1,))

    walk(tree, ())
    return out


def leftmost_leaf_index(tree: Tree, path: Path) -> int:
    """Number of leaves strictly to the left of the subtree at path."""
    count = 0
    t = tree
    for step in path:
        if step == 1:
            count += leaves(t[0])
        t = t[step]
    return count


def left_comb_of_pairs(m: int) -> Tree:
    """The admissible bracketing ((...((p1 p2) p3)...) pm) of 2m points."""
    if m == 0:
        return None
    pair = (LEAF, LEAF)
    tree: Tree = pair
    for _ in range(m - 1):
        tree = (tree, pair)
    return tree


def right_comb(groups: list[Tree]) -> Tree:
    if not groups:
        return None
    tree = groups[-1]
    for g in reversed(groups[:-1]):
        tree = (g, tree)
    return tree


def tree_to_str(tree: Tree) -> str:
    if tree is None:
        return "()"
    if tree == LEAF:
        return LEAF
    return "(" + tree_to_str(tree[0]) + tree_to_str(tree[1]) + ")"


def parse_tree(text: str) -> Tree:
    text = "".join(text.split())
    if text == "()":
        return None
    pos = 0

    def term():
        nonlocal pos
        if pos >= len(text):
            raise TangleError("unexpected end of tree")
        if text[pos] == ".":
            pos += 1
            return LEAF
        if text[pos] != "(":
            raise TangleError(f"unexpected {text[pos]!r} in tree at {pos}")
        pos += 1
        items = []
        while pos < len(text) and text[pos] != ")":
            items.append(term())
        if pos >= len(text):
            raise TangleError("unbalanced parentheses in tree")
        pos += 1
        if len(items) == 1:  # tolerate redundant wrapping parens
            return items[0]
        if len(items) != 2:
            raise TangleError("tree nodes must be binary")
        return (items[0], items[1])

    out = term()
    if pos != len(text):
        raise TangleError("trailing input after tree")
    return out


# ---------------------------------------------------------------------------
# slices and diagrams

KINDS = ("cap", "cup", "x+", "x-", "al", "ar", "kink+", "kink-")


@dataclass(frozen=True)
class Slice:
    kind: str
    path: Path

    def __str__(self) -> str:
        return f"{self.kind}@[{','.join(str(i) for i in self.path)}]"


def apply_slice(tree: Tree, sl: Slice, index: int = -1) -> Tree:
    k, p = sl.kind, sl.path
    if k == "cap":
        if tree is None:
            if p != ():
                raise SliceError(index, "cap on the empty object must use path []")
            return (LEAF, LEAF)
        t = subtree(tree, p)
        return replace(tree, p, (t, (LEAF, LEAF)))
    if tree is None:
        raise SliceError(index, f"{k} on the empty object")
    t = subtree(tree, p)
    if k == "cup":
        if t != (LEAF, LEAF):
            raise SliceError(index, "cup needs a node with two leaf children")
        return remove_node(tree, p)
    if k in ("x+", "x-"):
        if t != (LEAF, LEAF):
            raise SliceError(index, "crossing needs a node with two leaf children")
        return tree
    if k == "al":
        if not (isinstance(t, tuple) and isinstance(t[1], tuple)):
            raise SliceError(index, "al needs shape (t1 (t2 t3))")
        t1, (t2, t3) = t
        return replace(tree, p, ((t1, t2), t3))
    if k == "ar":
        if not (isinstance(t, tuple) and isinstance(t[0], tuple)):
            raise SliceError(index, "ar needs shape ((t1 t2) t3)")
        (t1, t2), t3 = t
        return replace(tree, p, (t1, (t2, t3)))
    if k in ("kink+", "kink-"):
        if t != LEAF:
            raise SliceError(index, "kink acts on a single strand leaf")
        return tree
    raise SliceError(index, f"unknown slice kind {k!r}")


@dataclass
class TangleDiagram:
    src: Tree
    slices: list[Slice] = field(default_factory=list)

    def boundaries(self) -> list[Tree]:
        """Boundary tree before each slice plus the final target."""
        out = [self.src]
        t = self.src
        for i, sl in enumerate(self.slices):
            t = apply_slice(t, sl, i)
            out.append(t)
        return out

    @property
    def target(self) -> Tree:
        return self.boundaries()[-1]

    def validate(self) -> None:
        self.boundaries()

    @property
    def arity_in(self) -> int:
        return leaves(self.src)

    @property
    def arity_out(self) -> int:
        return leaves(self.target)

    def is_closed(self) -> bool:
        return self.src is None and self.target is None

    def copy(self) -> "TangleDiagram":
        return TangleDiagram(self.src, list(self.slices))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TangleDiagram) and self.src == other.src
                and self.slices == other.slices)


# ---------------------------------------------------------------------------
# DSL


def serialize(d: TangleDiagram) -> str:
    lines = [f"src {tree_to_str(d.src)}"]
    lines += [str(sl) for sl in d.slices]
    return "\n".join(lines) + "\n"


def parse(text: str) -> TangleDiagram:
    src: Tree = None
    have_src = False
    slices: list[Slice] = []
    statements: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for stmt in body.split(";"):
            stmt = stmt.strip()
            if stmt:
                statements.append((lineno, stmt))
    for lineno, stmt in statements:
        if stmt.startswith("src"):
            if have_src:
                raise TangleError(f"line {lineno}: duplicate src header")
            src = parse_tree(stmt[3:].strip())
            have_src = True
            continue
        if not have_src:
            raise TangleError(f"line {lineno}: slice before src header")
        if "@" not in stmt:
            raise TangleError(f"line {lineno}: expected kind@[path]")
        kind, _, ptext = stmt.partition("@")
        kind = kind.strip()
        if kind not in KINDS:
            raise TangleError(f"line {lineno}: unknown generator {kind!r}")
        ptext = ptext.strip()
        if not (ptext.startswith("[") and ptext.endswith("]")):
            raise TangleError(f"line {lineno}: path must look like [0,1]")
        inner = ptext[1:-1].strip()
        try:
            path = tuple(int(t) for t in inner.split(",")) if inner else ()
        except ValueError as exc:
            raise TangleError(f"line {lineno}: bad path {ptext}") from exc
        if any(step not in (0, 1) for step in path):
            raise TangleError(f"line {lineno}: path steps must be 0 or 1")
        slices.append(Slice(kind, path))
    if not have_src:
        raise TangleError("missing src header")
    d = TangleDiagram(src, slices)
    try:
        d.validate()
    except SliceError as exc:
        raise TangleError(f"invalid slice word: {exc}") from exc
    return d


# ---------------------------------------------------------------------------
# composition and tensor


def compose(f: TangleDiagram, g: TangleDiagram) -> TangleDiagram:
    """g stacked below f (f first; sources are at the top)."""
    if f.target != g.src:
        raise TangleError(
            f"boundary mismatch: {tree_to_str(f.target)} vs {tree_to_str(g.src)}")
    return TangleDiagram(f.src, f.slices + g.slices)


def tensor(f: TangleDiagram, g: TangleDiagram) -> TangleDiagram:
    """Juxtaposition; a new root pairs the two source (and target) trees.

    An operand whose boundary becomes empty and reopens is re-grafted on the
    right edge of the running tree (a planar isotopy of the juxtaposition).
    Tensoring with the empty diagram returns the operand itself.
    """
    if f.src is None and not f.slices:
        return g.copy()
    if g.src is None and not g.slices:
        return f.copy()
    if f.src is not None and g.src is not None:
        combined: Tree = (f.src, g.src)
        anchor_f: Path | None = (0,)
        anchor_g: Path | None = (1,)
    elif f.src is None:
        combined = g.src
        anchor_f = None
        anchor_g = ()
    else:
        combined = f.src
        anchor_f = ()
        anchor_g = None

    out: list[Slice] = []
    tree = combined

    def run(slices: list[Slice], local_src: Tree, anchor, other_anchor):
        nonlocal tree
        local = local_src
        for i, sl in enumerate(slices):
            if anchor is None:
                if sl.kind != "cap" or sl.path != ():
                    raise SliceError(i, "reopening operand must start with cap@[]")
                if tree is None:
                    mapped = Slice("cap", ())
                    anchor = ()
                else:
                    mapped = Slice("cap", ())
                    anchor = (1,)
                    if other_anchor is not None:
                        other_anchor = (0,) + other_anchor
            else:
                mapped = Slice(sl.kind, anchor + sl.path)
            local = apply_slice(local, sl, i)
            tree = apply_slice(tree, mapped, len(out))
            out.append(mapped)
            if local is None:
                # operand side vanished: the parent pair collapsed to the sibling
                anchor = None
                if other_anchor:
                    other_anchor = other_anchor[1:]
        return anchor, other_anchor

    anchor_f, anchor_g = run(f.slices, f.src, anchor_f, anchor_g)
    anchor_g, anchor_f = run(g.slices, g.src, anchor_g, anchor_f)
    result = TangleDiagram(combined, out)
    result.validate()
    return result


def disjoint_union(f: TangleDiagram, g: TangleDiagram) -> TangleDiagram:
    return tensor(f, g)


# ---------------------------------------------------------------------------
# rebracketing helper


def comb_slices(tree: Tree, base: Path = ()) -> list[Slice]:
    """Associator word taking tree to its right comb (same leaf order)."""
    out: list[Slice] = []

    def walk(t: Tree, p: Path) -> Tree:
        if t is None or t == LEAF:
            return t
        while isinstance(t[0], tuple):
            out.append(Slice("ar", p))
            (t1, t2), t3 = t
            t = (t1, (t2, t3))
        return (t[0], walk(t[1], p + (1,)))

    walk(tree, base)
    return out


def rebracket(tree_from: Tree, tree_to: Tree, base: Path = ()) -> list[Slice]:
    """Associator slice word transforming one bracketing into another."""
    if leaves(tree_from) != leaves(tree_to):
        raise TangleError("rebracket endpoints have different sizes")
    fwd = comb_slices(tree_from, base)
    back = comb_slices(tree_to, base)
    inv = [Slice("al", sl.path) for sl in reversed(back)]
    return fwd + inv


class Builder:
    """Slice-word assembler that inserts associators automatically."""

    def __init__(self, src: Tree):
        self.src = src
        self.tree = src
        self.slices: list[Slice] = []

    def emit(self, sl: Slice) -> None:
        self.tree = apply_slice(self.tree, sl, len(self.slices))
        self.slices.append(sl)

    def to_tree(self, target: Tree) -> None:
        for sl in rebracket(self.tree, target):
            self.emit(sl)

    def fuse(self, i: int) -> Path:
        """Rebracket so that leaves (i, i+1) form a node; return its path."""
        n = leaves(self.tree)
        if not (0 <= i < n - 1):
            raise TangleError(f"no adjacent pair at position {i}")
        groups: list[Tree] = [LEAF] * (n - 1)
        groups[i] = (LEAF, LEAF)
        self.to_tree(right_comb(groups))
        if len(groups) == 1:
            return ()
        return (1,) * i + ((0,) if i < len(groups) - 1 else ())

    def cross(self, i: int, sign: int = 1) -> None:
        path = self.fuse(i)
        self.emit(Slice("x+" if sign > 0 else "x-", path))

    def cup(self, i: int) -> None:
        path = self.fuse(i)
        self.emit(Slice("cup", path))

    def cap_after(self, i: int) -> None:
        """Insert a new pair just right of leaf i (or open the empty object)."""
        if self.tree is None:
            self.emit(Slice("cap", ()))
            return
        paths = leaf_paths(self.tree)
        self.emit(Slice("cap", paths[i]))

    def kink(self, i: int, sign: int = 1) -> None:
        paths = leaf_paths(self.tree)
        self.emit(Slice("kink+" if sign > 0 else "kink-", paths[i]))

    def diagram(self) -> TangleDiagram:
        return TangleDiagram(self.src, list(self.slices))


# ---------------------------------------------------------------------------
# kink expansion and geometric tracing


def expand_kinks(d: TangleDiagram) -> TangleDiagram:
    """Replace kink slices by their cap/associator/crossing/cup composite."""
    out: list[Slice] = []
    for i, sl in enumerate(d.slices):
        if sl.kind in ("kink+", "kink-"):
            p = sl.path
            sign = "x+" if sl.kind == "kink+" else "x-"
            out += [Slice("cap", p), Slice("al", p), Slice(sign, p + (0,)),
                    Slice("cup", p + (0,))]
        else:
            out.append(sl)
    return TangleDiagram(d.src, out)


@dataclass
class Component:
    index: int
    kind: str                      # 'loop' | 'cup' | 'cap' | 'through'
    top: tuple[int, ...] = ()      # top endpoint positions in walk order
    bottom: tuple[int, ...] = ()
    events: list = field(default_factory=list)
    edge_sequence: list = field(default_factory=list)

    @property
    def writhe(self) -> int:
        seen: dict[int, tuple[str, int]] = {}
        w = 0
        for ev in self.events:
            if ev[0] != "cross":
                continue
            _, cno, diag, direction, gen = ev
            if cno in seen:
                w += _crossing_sign(gen, seen[cno], (diag, direction))
            else:
                seen[cno] = (diag, direction)
        return w

    @property
    def winding(self) -> int:
        return sum(ev[1] for ev in self.events if ev[0] == "turn")


_DIRVEC = {("A", 1): (1, -1), ("A", -1): (-1, 1),
           ("B", 1): (-1, -1), ("B", -1): (1, 1)}


def _crossing_sign(gen: str, pass1: tuple[str, int], pass2: tuple[str, int]) -> int:
    over = pass1 if (pass1[0] == "A") == (gen == "x+") else pass2
    under = pass2 if over is pass1 else pass1
    (ox, oy), (ux, uy) = _DIRVEC[over], _DIRVEC[under]
    det = ox * uy - oy * ux
    return 1 if det > 0 else -1


class Traced:
    """Strand-level structure of a diagram: components, writhes, crossings.

    Canonical walks: through-strands from their top endpoint downward, cup
    components from the left top endpoint, cap components from the left
    bottom endpoint upward, closed loops from the left leg of their creating
    cap downward.
    """

    def __init__(self, d: TangleDiagram):
        d = expand_kinks(d)
        self.diagram = d
        self._build_graph()
        self._walk_components()

    def _build_graph(self) -> None:
        d = self.diagram
        trees = d.boundaries()
        m = leaves(d.src)
        self.edges: list[dict] = []
        self.crossings: list[dict] = []
        self.positions_after: list[list[int]] = []

        def new_edge() -> int:
            self.edges.append({"top": None, "bottom": None})
            return len(self.edges) - 1

        positions = []
        for i in range(m):
            e = new_edge()
            self.edges[e]["top"] = ("TOP", i)
            positions.append(e)
        self.positions_before: list[list[int]] = []
        for no, sl in enumerate(d.slices):
            self.positions_before.append(list(positions))
            tree = trees[no]
            if sl.kind in ("al", "ar"):
                self.positions_after.append(list(positions))
                continue
            if sl.kind == "cap":
                if tree is None:
                    pos = 0
                else:
                    t = subtree(tree, sl.path)
                    pos = leftmost_leaf_index(tree, sl.path) + leaves(t)
                a, b = new_edge(), new_edge()
                self.edges[a]["top"] = ("CAPL", no, b)
                self.edges[b]["top"] = ("CAPR", no, a)
                positions[pos:pos] = [a, b]
            elif sl.kind == "cup":
                pos = leftmost_leaf_index(tree, sl.path)
                a, b = positions[pos], positions[pos + 1]
                self.edges[a]["bottom"] = ("CUPL", no, b)
                self.edges[b]["bottom"] = ("CUPR", no, a)
                del positions[pos:pos + 2]
            elif sl.kind in ("x+", "x-"):
                pos = leftmost_leaf_index(tree, sl.path)
                a, b = positions[pos], positions[pos + 1]
                a2, b2 = new_edge(), new_edge()
                cno = len(self.crossings)
                self.crossings.append({"gen": sl.kind, "slice": no,
                                       "a_in": a, "b_in": b,
                                       "a_out": a2, "b_out": b2})
                self.edges[a]["bottom"] = ("XA_IN", cno)
                self.edges[b]["bottom"] = ("XB_IN", cno)
                self.edges[a2]["top"] = ("XA_OUT", cno)
                self.edges[b2]["top"] = ("XB_OUT", cno)
                positions[pos] = b2
                positions[pos + 1] = a2
            else:
                raise AssertionError(f"unexpanded slice {sl.kind}")
            self.positions_after.append(list(positions))
        for j, e in enumerate(positions):
            self.edges[e]["bottom"] = ("BOT", j)
        self.m_in = m
        self.n_out = len(positions)

    def _next(self, edge: int, direction: int):
        """(next_edge, next_dir, event, stop) leaving one end of an edge."""
        e = self.edges[edge]
        conn = e["bottom"] if direction == 1 else e["top"]
        tag = conn[0]
        if tag == "BOT":
            return None, None, None, ("bottom", conn[1])
        if tag == "TOP":
            return None, None, None, ("top", conn[1])
        if tag in ("CUPL", "CUPR"):
            turn = 1 if tag == "CUPL" else -1          # min LR: +1, RL: -1
            return conn[2], -1, ("turn", turn), None
        if tag in ("CAPL", "CAPR"):
            turn = -1 if tag == "CAPL" else 1          # max LR: -1, RL: +1
            return conn[2], 1, ("turn", turn), None
        cno = conn[1]
        c = self.crossings[cno]
        gen = c["gen"]
        if tag == "XA_IN":
            return c["a_out"], 1, ("cross", cno, "A", 1, gen), None
        if tag == "XB_IN":
            return c["b_out"], 1, ("cross", cno, "B", 1, gen), None
        if tag == "XA_OUT":
            return c["a_in"], -1, ("cross", cno, "A", -1, gen), None
        if tag == "XB_OUT":
            return c["b_in"], -1, ("cross", cno, "B", -1, gen), None
        raise AssertionError(tag)

    def _full_walk(self, start_edge: int, start_dir: int):
        events: list = []
        seq: list[tuple[int, int]] = []
        endpoints: list[tuple[str, int]] = []
        e, dr = start_edge, start_dir
        if start_dir == 1 and self.edges[start_edge]["top"][0] == "TOP":
            endpoints.append(("top", self.edges[start_edge]["top"][1]))
        if start_dir == -1 and self.edges[start_edge]["bottom"][0] == "BOT":
            endpoints.append(("bottom", self.edges[start_edge]["bottom"][1]))
        while True:
            seq.append((e, dr))
            nxt, ndr, ev, stop = self._next(e, dr)
            if stop is not None:
                endpoints.append(stop)
                break
            events.append(ev)
            if nxt == start_edge and ndr == start_dir:
                break
            e, dr = nxt, ndr
        return seq, events, endpoints

    def _walk_components(self) -> None:
        comps: list[Component] = []
        claimed: set[int] = set()
        top_edges, bot_edges = {}, {}
        for idx, e in enumerate(self.edges):
            if e["top"] and e["top"][0] == "TOP":
                top_edges[e["top"][1]] = idx
            if e["bottom"] and e["bottom"][0] == "BOT":
                bot_edges[e["bottom"][1]] = idx
        starts = [(top_edges[i], 1) for i in sorted(top_edges)]
        starts += [(bot_edges[i], -1) for i in sorted(bot_edges)]
        for edge, direction in starts:
            if edge in claimed:
                continue
            seq, events, ends = self._full_walk(edge, direction)
            tops = tuple(i for kind, i in ends if kind == "top")
            bots = tuple(i for kind, i in ends if kind == "bottom")
            kind = "cup" if len(tops) == 2 else "cap" if len(bots) == 2 else "through"
            comp = Component(index=len(comps), kind=kind, top=tops, bottom=bots,
                             events=events, edge_sequence=seq)
            comps.append(comp)
            claimed.update(e for e, _ in seq)
        for idx in range(len(self.edges)):
            if idx in claimed:
                continue
            seq, events, ends = self._full_walk(idx, 1)
            assert not ends
            comp = Component(index=len(comps), kind="loop",
                             events=events, edge_sequence=seq)
            comps.append(comp)
            claimed.update(e for e, _ in seq)
        self.components = comps
        self.edge_owner = {}
        for comp in comps:
            for e, _ in comp.edge_sequence:
                self.edge_owner[e] = comp.index

    # -- derived data -----------------------------------------------------

    def closed_components(self) -> list[Component]:
        return [c for c in self.components if c.kind == "loop"]

    def linking_matrix(self, components: list[Component] | None = None) -> list[list[int]]:
        comps = components if components is not None else self.components
        if components is None and (self.m_in or self.n_out):
            raise TangleError("linking matrix needs a closed (0 -> 0) diagram")
        index_of = {c.index: k for k, c in enumerate(comps)}
        k = len(comps)
        mat = [[0] * k for _ in range(k)]
        passes: dict[int, list[tuple[int, str, int]]] = {}
        for c in comps:
            for ev in c.events:
                if ev[0] == "cross":
                    _, cno, diag, direction, _gen = ev
                    passes.setdefault(cno, []).append((index_of[c.index], diag, direction))
        for cno, ps in passes.items():
            if len(ps) != 2:
                continue  # crossing with a component outside the selection
            gen = self.crossings[cno]["gen"]
            (i, d1, r1), (j, d2, r2) = ps
            sign = _crossing_sign(gen, (d1, r1), (d2, r2))
            if i == j:
                mat[i][i] += sign
            else:
                mat[i][j] += sign
                mat[j][i] += sign
        for i in range(k):
            for j in range(k):
                if i != j:
                    assert mat[i][j] % 2 == 0, "odd inter-component crossing sum"
                    mat[i][j] //= 2
        return mat


def linking_matrix(d: TangleDiagram) -> list[list[int]]:
    return Traced(d).linking_matrix()


# ---------------------------------------------------------------------------
# admissibility


def is_pair_comb(tree: Tree) -> bool:
    if tree is None:
        return True
    pair = (LEAF, LEAF)
    while isinstance(tree, tuple) and tree != pair:
        if tree[1] != pair:
            return False
        tree = tree[0]
    return tree == pair


def check_admissible(d: TangleDiagram) -> tuple[bool, list[str]]:
    problems: list[str] = []
    try:
        d.validate()
    except SliceError as exc:
        return False, [str(exc)]
    if not is_pair_comb(d.src):
        problems.append("source tree is not the left comb of pairs")
    if not is_pair_comb(d.target):
        problems.append("target tree is not the left comb of pairs")
    if problems:
        return False, problems
    tr = Traced(d)
    if tr.m_in % 2 or tr.n_out % 2:
        return False, ["odd number of endpoints"]
    top_partner: dict[int, Component] = {}
    bottom_partner: dict[int, Component] = {}
    for comp in tr.components:
        for t in comp.top:
            top_partner[t] = comp
        for b in comp.bottom:
            bottom_partner[b] = comp
    for j in range(tr.m_in // 2):
        a, b = 2 * j, 2 * j + 1
        ca, cb = top_partner[a], top_partner[b]
        if ca.kind == "cup" and ca is cb:
            continue
        if ca.kind == "through" and cb.kind == "through":
            ia, ib = ca.bottom[0], cb.bottom[0]
            if ia // 2 == ib // 2:
                continue
            problems.append(f"top pair {j} connects across bottom pairs")
        else:
            problems.append(f"top pair {j} is not pair-respecting")
    for i in range(tr.n_out // 2):
        a, b = 2 * i, 2 * i + 1
        ca, cb = bottom_partner[a], bottom_partner[b]
        if ca.kind == "cap" and ca is cb:
            continue
        if not (ca.kind == "through" and cb.kind == "through"):
            problems.append(f"bottom pair {i} is not pair-respecting")
    return not problems, problems


# ---------------------------------------------------------------------------
# standard diagrams


def _lasso(b: Builder, lo: int, hi: int, framing: int, sign: int = 1) -> None:
    """A circle around strand positions [lo..hi] with the given kink framing.

    Opens to the right of strand hi; the left arc crosses leftward over the
    group and returns.  `sign` picks the crossing generator of the passes.
    """
    b.cap_after(hi)
    width = hi - lo + 1
    for k in range(width):
        b.cross(hi - k, sign)
    for _ in range(abs(framing)):
        b.kink(lo, 1 if framing > 0 else -1)
    for k in range(width):
        b.cross(lo + k, sign)
    b.cup(hi + 1)


def sigma_lhs() -> TangleDiagram:
    """The sigma-move left side: the pair is cut by a cup/cap and the two
    inner strands thread a 0-framed circle."""
    b = Builder((LEAF, LEAF))
    b.cap_after(1)
    _lasso(b, 1, 2, framing=0, sign=1)
    b.cup(0)
    b.to_tree((LEAF, LEAF))
    return b.diagram()


def fig8_block(p: Path) -> list[Slice]:
    """Slices realizing the cap/cross/cup replacement tangle for x- at p."""
    return [
        Slice("cap", p + (1,)),
        Slice("al", p + (1,)),
        Slice("x+", p + (1, 0)),
        Slice("al", p),
        Slice("al", p + (0,)),
        Slice("cup", p + (0, 0)),
    ]


def standard_diagram(name: str, *params) -> TangleDiagram:
    if name == "empty":
        return TangleDiagram(None, [])
    if name == "unknot":
        kinks = params[0] if params else 0
        b = Builder(None)
        b.cap_after(0)
        for _ in range(abs(kinks)):
            b.kink(0, 1 if kinks > 0 else -1)
        b.cup(0)
        return b.diagram()
    if name == "hopf":
        ka = params[0] if params else 0
        kb = params[1] if len(params) > 1 else 0
        b = Builder(None)
        b.cap_after(0)
        b.cap_after(0)
        b.cross(2, -1)
        b.cross(2, -1)
        for _ in range(abs(ka)):
            b.kink(0, 1 if ka > 0 else -1)
        for _ in range(abs(kb)):
            b.kink(1, 1 if kb > 0 else -1)
        b.cup(1)
        b.cup(0)
        return b.diagram()
    if name == "trefoil":
        b = Builder(None)
        b.cap_after(0)
        b.cap_after(1)
        for _ in range(3):
            b.cross(1, 1)
        b.cup(2)
        b.cup(0)
        return b.diagram()
    if name == "fig8_d":
        d = TangleDiagram((LEAF, LEAF), fig8_block(()))
        d.validate()
        return d
    if name == "sigma_lhs":
        return sigma_lhs()
    if name == "identity_pair":
        return TangleDiagram((LEAF, LEAF), [])
    raise TangleError(f"unknown standard diagram {name!r}")


# ---------------------------------------------------------------------------
# moves


MOVES = ("I", "II", "III", "IV", "R", "Pentagon", "Sigma", "FennRourke", "KirbyHopf")


def move_blocks_I(p: Path) -> list[Slice]:
    return [Slice("cap", p), Slice("al", p), Slice("cup", p + (0,))]


def move_blocks_II(p: Path, order: int = 1) -> list[Slice]:
    if order > 0:
        return [Slice("x+", p), Slice("x-", p)]
    return [Slice("x-", p), Slice("x+", p)]


def move_blocks_III(p: Path) -> tuple[list[Slice], list[Slice]]:
    lhs = [Slice("x+", p + (0,)), Slice("ar", p), Slice("x+", p + (1,)),
           Slice("al", p), Slice("x+", p + (0,)), Slice("ar", p)]
    rhs = [Slice("ar", p), Slice("x+", p + (1,)), Slice("al", p),
           Slice("x+", p + (0,)), Slice("ar", p), Slice("x+", p + (1,))]
    return lhs, rhs


def move_blocks_pentagon(p: Path) -> tuple[list[Slice], list[Slice]]:
    lhs = [Slice("ar", p), Slice("ar", p)]
    rhs = [Slice("ar", p + (0,)), Slice("ar", p), Slice("ar", p + (1,))]
    return lhs, rhs


def move_blocks_R(p: Path, order: int = 1) -> list[Slice]:
    if order > 0:
        return [Slice("kink+", p), Slice("kink-", p)]
    return [Slice("kink-", p), Slice("kink+", p)]


def sigma_block(p: Path) -> list[Slice]:
    base = sigma_lhs()
    return [Slice(sl.kind, p + sl.path) for sl in base.slices]


def hopf_block(tree: Tree) -> list[Slice]:
    """An isolated 0/0-framed Hopf link grafted right of the whole boundary."""
    hopf = standard_diagram("hopf")
    if tree is None:
        return list(hopf.slices)
    mapped: list[Slice] = []
    t: Tree = None
    anchor: Path = ()
    for i, sl in enumerate(hopf.slices):
        if t is None:
            mapped.append(Slice("cap", ()))
            anchor = (1,)
        else:
            mapped.append(Slice(sl.kind, anchor + sl.path))
        t = apply_slice(t, sl, i)
    return mapped


def unknot_block(tree: Tree, kinks: int) -> list[Slice]:
    unk = standard_diagram("unknot", kinks)
    if tree is None:
        return list(unk.slices)
    mapped: list[Slice] = []
    t: Tree = None
    anchor: Path = ()
    for i, sl in enumerate(unk.slices):
        if t is None:
            mapped.append(Slice("cap", ()))
            anchor = (1,)
        else:
            mapped.append(Slice(sl.kind, anchor + sl.path))
        t = apply_slice(t, sl, i)
    return mapped


def fr_lasso_block(tree: Tree, lo: int, n: int, circle_sign: int) -> list[Slice]:
    """A circle_sign-framed circle around strand positions [lo..lo+n-1]."""
    b = Builder(tree)
    _lasso(b, lo, lo + n - 1, framing=circle_sign, sign=-circle_sign)
    b.to_tree(tree)
    return b.slices


def fr_twist_block(tree: Tree, lo: int, n: int, circle_sign: int) -> list[Slice]:
    """The Fenn-Rourke right side: a full (-circle_sign) twist on the n
    strands (cable curl: pairwise braiding plus one kink per strand) and a
    split circle_sign-framed unknot."""
    b = Builder(tree)
    twist = -circle_sign
    for _ in range(n):
        for k in range(n - 1):
            b.cross(lo + k, twist)
    for k in range(n):
        b.kink(lo + k, twist)
    b.to_tree(tree)
    return b.slices + unknot_block(tree, circle_sign)


def fenn_rourke_pair(tree: Tree, lo: int, n: int, circle_sign: int
                     ) -> tuple[list[Slice], list[Slice]]:
    """Both sides of the Fenn-Rourke relation as insertable blocks."""
    return (fr_lasso_block(tree, lo, n, circle_sign),
            fr_twist_block(tree, lo, n, circle_sign))


@dataclass(frozen=True)
class MoveSite:
    """Where to apply a move: slice offset, bracket path, extra argument."""
    at: int
    path: Path = ()
    arg: int = 1


def apply_move(d: TangleDiagram, move: str, site: MoveSite,
               insert: bool = True) -> TangleDiagram:
    """Rewrite d by the named move at the site; returns a new diagram.

    Pattern moves (III, IV, Pentagon, FennRourke) rewrite LHS -> RHS when
    insert is True and RHS -> LHS otherwise; insertion moves (I, II, R,
    Sigma, KirbyHopf) insert the trivial block or remove a present one.
    """
    slices = list(d.slices)
    trees = d.boundaries()
    i, p = site.at, site.path
    if not (0 <= i <= len(slices)):
        raise TangleError(f"{move}: slice offset {i} out of range")

    def check_fits(block: list[Slice]) -> None:
        if slices[i:i + len(block)] != block:
            raise TangleError(f"{move}: pattern not present at slice {i}")

    if move in ("I", "II", "R", "Sigma", "KirbyHopf"):
        if move == "I":
            block = move_blocks_I(p)
            guard = _require_leaf
        elif move == "II":
            block = move_blocks_II(p, site.arg)
            guard = _require_pair
        elif move == "R":
            block = move_blocks_R(p, site.arg)
            guard = _require_leaf
        elif move == "Sigma":
            block = sigma_block(p)
            guard = _require_pair
        else:
            block = hopf_block(trees[i])
            guard = None
        if insert:
            if guard:
                guard(trees[i], p, move)
            new = slices[:i] + block + slices[i:]
        else:
            check_fits(block)
            new = slices[:i] + slices[i + len(block):]
    elif move in ("III", "Pentagon"):
        lhs, rhs = (move_blocks_III(p) if move == "III"
                    else move_blocks_pentagon(p))
        src_block, dst_block = (lhs, rhs) if insert else (rhs, lhs)
        check_fits(src_block)
        new = slices[:i] + dst_block + slices[i + len(src_block):]
    elif move == "IV":
        if insert:
            check_fits([Slice("x-", p)])
            new = slices[:i] + fig8_block(p) + slices[i + 1:]
        else:
            block = fig8_block(p)
            check_fits(block)
            new = slices[:i] + [Slice("x-", p)] + slices[i + len(block):]
    elif move == "FennRourke":
        n_strands = site.arg
        sign = 1 if site.path == () or site.path[0] == 0 else -1
        raise TangleError("use apply_fenn_rourke(d, at, lo, n, sign, insert)")
    else:
        raise TangleError(f"unknown move {move!r}")
    out = TangleDiagram(d.src, new)
    out.validate()
    return out


def apply_fenn_rourke(d: TangleDiagram, at: int, lo: int, n: int,
                      circle_sign: int, insert: bool = True) -> TangleDiagram:
    """Rewrite a lasso block into its twist block (insert=True) or back."""
    trees = d.boundaries()
    tree = trees[at]
    lasso, twist = fenn_rourke_pair(tree, lo, n, circle_sign)
    slices = list(d.slices)
    src_block, dst_block = (lasso, twist) if insert else (twist, lasso)
    if slices[at:at + len(src_block)] != src_block:
        raise TangleError("FennRourke: pattern not present at slice offset")
    new = slices[:at] + dst_block + slices[at + len(src_block):]
    out = TangleDiagram(d.src, new)
    out.validate()
    return out


def _require_leaf(tree: Tree, p: Path, move: str) -> None:
    if tree is None or subtree(tree, p) != LEAF:
        raise TangleError(f"{move}: site path must address a strand leaf")


def _require_pair(tree: Tree, p: Path, move: str) -> None:
    if tree is None or subtree(tree, p) != (LEAF, LEAF):
        raise TangleError(f"{move}: site path must address a two-leaf node")


# ---------------------------------------------------------------------------
# random diagrams (round-trip and fuzz support)


def random_diagram(rng: random.Random, max_slices: int = 14,
                   closed: bool = True, max_pairs: int = 2) -> TangleDiagram:
    src = None if closed else left_comb_of_pairs(rng.randint(1, max_pairs))
    b = Builder(src)
    for _ in range(rng.randint(1, max_slices)):
        n = leaves(b.tree)
        ops = ["cap"]
        if n >= 2:
            ops += ["cross", "cross", "cup"]
        if n >= 1:
            ops.append("kink")
        op = rng.choice(ops)
        if op == "cap":
            b.cap_after(rng.randrange(n) if n else 0)
        elif op == "cross":
            b.cross(rng.randrange(n - 1), rng.choice((1, -1)))
        elif op == "kink":
            b.kink(rng.randrange(n), rng.choice((1, -1)))
        else:
            b.cup(rng.randrange(n - 1))
    if closed:
        while b.tree is not None:
            n = leaves(b.tree)
            b.cup(rng.randrange(n - 1) if n > 2 else 0)
    else:
        n = leaves(b.tree)
        if n % 2 == 0 and n > 0:
            b.to_tree(left_comb_of_pairs(n // 2))
    return b.diagram()
