"""Machine-checkable forcing-chain certificates for upper bounds.

A certificate branches on the color of the left endpoint and closes every
branch with a monochromatic contradiction.  Each forcing step carries the
exact solution that justifies it.  The soundness rule is: every entry of the
step's witness OTHER than the forced point must already carry the witness's
color; the point itself may occur in the witness several times (a solution is
allowed to use the forced value twice), so the rule is deliberately not
"exactly one entry is unassigned".

Verification replays a certificate from nothing but its serialized content,
in exact arithmetic, and reports the branch path, step index, and violated
condition on failure.  Builders never return unverified output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .equations import Color, ProblemSpec, SolutionWitness, check_witness
from .propagation import Clause, ClauseSystem, propagate_masks
from .serialize import exact_fraction, format_rational, parse_rational


@dataclass(frozen=True)
class ForcingStep:
    point: Fraction
    forced: Color
    witness: SolutionWitness

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", exact_fraction(self.point))


@dataclass(frozen=True)
class BranchNode:
    """An assumption, the chain it forces, and how the branch ends: either a
    contradiction witness or a further split on one point."""

    point: Fraction
    color: Color
    steps: tuple[ForcingStep, ...]
    contradiction: Optional[SolutionWitness] = None
    children: Optional[tuple["BranchNode", "BranchNode"]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", exact_fraction(self.point))
        if (self.contradiction is None) == (self.children is None):
            raise ValueError("a branch ends in exactly one of contradiction or children")


@dataclass(frozen=True)
class ForcingCertificate:
    spec: ProblemSpec
    domain_end: Fraction
    root: tuple[BranchNode, BranchNode]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain_end", exact_fraction(self.domain_end))
        object.__setattr__(self, "root", tuple(self.root))
        if len(self.root) != 2:
            raise ValueError("root must branch both ways on the left endpoint")


@dataclass(frozen=True)
class CheckFailure:
    path: tuple[str, ...]
    step_index: Optional[int]
    reason: str


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    failure: Optional[CheckFailure] = None

    def __bool__(self) -> bool:
        return self.ok


class UnprovedError(Exception):
    """The automatic prover exhausted its grid or depth; explicitly not a bug."""

    def __init__(self, spec: ProblemSpec, branch: str, denominator: int, depth: int):
        self.spec = spec
        self.branch = branch
        self.denominator = denominator
        self.depth = depth
        super().__init__(
            f"no closing chain for the {branch} branch of (k={spec.k}, l={spec.l}) "
            f"on the 1/{denominator} grid within depth {depth}"
        )


def _fail(path: tuple[str, ...], step: Optional[int], reason: str) -> CertificateCheck:
    return CertificateCheck(False, CheckFailure(path, step, reason))


def _branch_label(point: Fraction, color: Color) -> str:
    return f"{format_rational(point)}={color.value}"


def _verify_node(
    spec: ProblemSpec,
    domain_end: Fraction,
    node: BranchNode,
    state: dict[Fraction, Color],
    path: tuple[str, ...],
) -> CertificateCheck:
    path = path + (_branch_label(node.point, node.color),)
    if not spec.gamma <= node.point <= domain_end:
        return _fail(path, None, "assumption point outside the domain")
    if node.point in state:
        return _fail(path, None, "assumption point already colored")
    state[node.point] = node.color

    for index, step in enumerate(node.steps):
        w = step.witness
        if w.color is not step.forced.opposite:
            return _fail(path, index, "witness color must oppose the forced color")
        if not check_witness(spec, w):
            return _fail(path, index, "witness fails arithmetic, arity, or domain-start check")
        if any(v > domain_end for v in w.points()):
            return _fail(path, index, "witness uses a value beyond the domain end")
        if not w.contains(step.point):
            return _fail(path, index, "forced point does not occur in its witness")
        for v in w.points():
            if v != step.point and state.get(v) is not w.color:
                return _fail(
                    path, index,
                    f"entry {format_rational(v)} is not already colored {w.color.value}",
                )
        if step.point in state:
            return _fail(path, index, "forced point already colored")
        state[step.point] = step.forced

    if node.contradiction is not None:
        w = node.contradiction
        if not check_witness(spec, w):
            return _fail(path, None, "contradiction fails arithmetic, arity, or domain-start check")
        if any(v > domain_end for v in w.points()):
            return _fail(path, None, "contradiction uses a value beyond the domain end")
        for v in w.points():
            if state.get(v) is not w.color:
                return _fail(
                    path, None,
                    f"contradiction entry {format_rational(v)} is not colored {w.color.value}",
                )
        return CertificateCheck(True)

    first, second = node.children  # type: ignore[misc]
    if first.point != second.point:
        return _fail(path, None, "children must split the same point")
    if {first.color, second.color} != {Color.RED, Color.BLUE}:
        return _fail(path, None, "children must assume opposite colors")
    if first.point in state:
        return _fail(path, None, "split point already colored")
    for child in (first, second):
        result = _verify_node(spec, domain_end, child, dict(state), path)
        if not result.ok:
            return result
    return CertificateCheck(True)


def verify_branch(
    spec: ProblemSpec,
    domain_end,
    node: BranchNode,
    ambient: Mapping[Fraction, Color] = {},
) -> CertificateCheck:
    """Check a single branch under pre-colored ambient points."""
    domain_end = exact_fraction(domain_end)
    state = {exact_fraction(p): c for p, c in ambient.items()}
    return _verify_node(spec, domain_end, node, state, ())


def verify_certificate(certificate: ForcingCertificate) -> CertificateCheck:
    """Replay every branch in exact arithmetic; True iff all of them close.

    Verification depends only on the certificate's own content, so a
    round-tripped file checks identically to the freshly built object.
    """
    spec = certificate.spec
    first, second = certificate.root
    if first.point != spec.gamma or second.point != spec.gamma:
        return _fail((), None, "root must branch on the left endpoint")
    if {first.color, second.color} != {Color.RED, Color.BLUE}:
        return _fail((), None, "root branches must assume opposite colors")
    for node in certificate.root:
        result = _verify_node(spec, certificate.domain_end, node, {}, ())
        if not result.ok:
            return result
    return CertificateCheck(True)


def certificate_stats(certificate: ForcingCertificate) -> dict:
    """Branch count, step count, and every point the certificate colors."""
    branches = 0
    steps = 0
    points: set[Fraction] = set()

    def walk(node: BranchNode) -> None:
        nonlocal branches, steps
        branches += 1
        steps += len(node.steps)
        points.add(node.point)
        for step in node.steps:
            points.add(step.point)
        if node.children is not None:
            walk(node.children[0])
            walk(node.children[1])

    for node in certificate.root:
        walk(node)
    return {
        "branches": branches,
        "steps": steps,
        "points_used": [format_rational(p) for p in sorted(points)],
    }


# ---------------------------------------------------------------------------
# Hand-built chains


class _ChainBuilder:
    """Executes a planned forcing chain against its own accumulated state.

    Plans are written for the generic parameter values; for small parameters
    the planned points can collide (the same value forced twice, or a point
    that is already the other color).  A step whose point already has the
    target color is skipped; a step whose point already carries the witness's
    color short-circuits the branch, because that witness is then fully
    monochromatic.  Either way the emitted chain verifies.
    """

    def __init__(self, point, color: Color):
        self.point = exact_fraction(point)
        self.color = color
        self.state: dict[Fraction, Color] = {self.point: color}
        self.steps: list[ForcingStep] = []
        self.contradiction: Optional[SolutionWitness] = None

    @property
    def closed(self) -> bool:
        return self.contradiction is not None

    def _require_support(self, witness: SolutionWitness, exclude: Optional[Fraction]) -> None:
        for v in witness.points():
            if v != exclude and self.state.get(v) is not witness.color:
                raise RuntimeError(
                    f"ill-formed chain: {format_rational(v)} is not {witness.color.value} yet"
                )

    def force(self, point, forced: Color, witness: SolutionWitness) -> None:
        if self.closed:
            return
        point = exact_fraction(point)
        current = self.state.get(point)
        if current is forced:
            return
        self._require_support(witness, exclude=point)
        if current is not None:  # already the witness color: monochromatic now
            self.contradiction = witness
            return
        self.steps.append(ForcingStep(point, forced, witness))
        self.state[point] = forced

    def close(self, witness: SolutionWitness) -> None:
        if self.closed:
            return
        self._require_support(witness, exclude=None)
        self.contradiction = witness

    def node(self) -> BranchNode:
        if not self.closed:
            raise RuntimeError("chain did not reach a contradiction")
        return BranchNode(self.point, self.color, tuple(self.steps), self.contradiction)


def _w(color: Color, pairs: Iterable[tuple], x0) -> SolutionWitness:
    kept = tuple((exact_fraction(v), m) for v, m in pairs if m != 0)
    return SolutionWitness(color, kept, exact_fraction(x0))


def build_k2_certificate(l: int) -> ForcingCertificate:
    """Both branches for k = 2 on the closed domain [1, 2l+1].

    The red-start branch walks 2, 2l, 2l+1, 2l-1 and then pins 3/2 and 5/2
    red through solutions that use each of them twice, ending in the red
    solution 1 + 3/2 = 5/2; the blue-start branch stays on integers.
    """
    if not isinstance(l, int) or l < 2:
        raise ValueError(f"need an integer l >= 2, got {l!r}")
    spec = ProblemSpec(2, l)
    half3, half5 = Fraction(3, 2), Fraction(5, 2)

    red = _ChainBuilder(1, Color.RED)
    red.force(2, Color.BLUE, _w(Color.RED, [(1, 2)], 2))
    red.force(2 * l, Color.RED, _w(Color.BLUE, [(2, l)], 2 * l))
    red.force(2 * l + 1, Color.BLUE, _w(Color.RED, [(1, 1), (2 * l, 1)], 2 * l + 1))
    red.force(2 * l - 1, Color.BLUE, _w(Color.RED, [(1, 1), (2 * l - 1, 1)], 2 * l))
    red.force(half3, Color.RED, _w(Color.BLUE, [(2, l - 2), (half3, 2)], 2 * l - 1))
    red.force(half5, Color.RED, _w(Color.BLUE, [(2, l - 2), (half5, 2)], 2 * l + 1))
    red.close(_w(Color.RED, [(1, 1), (half3, 1)], half5))

    blue = _ChainBuilder(1, Color.BLUE)
    blue.force(l, Color.RED, _w(Color.BLUE, [(1, l)], l))
    blue.force(2 * l, Color.BLUE, _w(Color.RED, [(l, 2)], 2 * l))
    blue.force(2, Color.RED, _w(Color.BLUE, [(2, l)], 2 * l))
    blue.force(4, Color.BLUE, _w(Color.RED, [(2, 2)], 4))
    blue.force(l + 2, Color.BLUE, _w(Color.RED, [(2, 1), (l, 1)], l + 2))
    blue.force(3, Color.RED, _w(Color.BLUE, [(1, l - 1), (3, 1)], l + 2))
    blue.force(l + 3, Color.RED, _w(Color.BLUE, [(1, l - 1), (4, 1)], l + 3))
    blue.close(_w(Color.RED, [(3, 1), (l, 1)], l + 3))

    certificate = ForcingCertificate(spec, Fraction(2 * l + 1), (red.node(), blue.node()))
    result = verify_certificate(certificate)
    if not result.ok:
        raise RuntimeError(f"built certificate failed its own check: {result.failure}")
    return certificate


@dataclass(frozen=True)
class ResidueParams:
    """Arithmetic behind the mixed solution that drives the blue-start chain.

    With gap = l - k, residue is the least nonnegative value congruent to
    1 - k modulo gap; mix_count entries of the red equation then take the
    value l (the rest take k) so that the sum, mixed_sum, leaves exactly the
    right room modulo the gap for the closing blue solutions.
    """

    k: int
    l: int
    gap: int
    residue: int
    mix_count: int
    mixed_sum: int


def residue_params(k: int, l: int) -> ResidueParams:
    if not (isinstance(k, int) and isinstance(l, int) and 2 <= k < l):
        raise ValueError(f"need integers 2 <= k < l, got k={k!r}, l={l!r}")
    gap = l - k
    residue = (1 - k) % gap
    quotient, leftover = divmod(1 - k - residue, gap)
    if leftover:
        raise AssertionError("residue choice guarantees divisibility")
    mix_count = k - 1 + quotient
    mixed_sum = k * k + (gap - 1) * (k - 1) - residue
    if not 0 <= mix_count <= k:
        raise AssertionError(f"mix count {mix_count} escaped [0, {k}]")
    if (k - mix_count) * k + mix_count * l != mixed_sum:
        raise AssertionError("mixed solution arithmetic out of tune")
    return ResidueParams(k, l, gap, residue, mix_count, mixed_sum)


def build_blue1_certificate(spec: ProblemSpec) -> BranchNode:
    """The branch assuming the left endpoint blue, for 3 <= k < l.

    Forces l, k, l+1 red and kl blue, then forces the mixed sum blue.  When
    the residue vanishes the chain is already contradictory; otherwise 2 goes
    red, 2k and 2k+l-1 go blue, and 1 + ... + 1 + 2k = 2k+l-1 closes all blue.
    """
    k, l = spec.k, spec.l
    if not 3 <= k < l:
        raise ValueError(f"need 3 <= k < l, got k={k}, l={l}")
    if spec.gamma != 1:
        raise ValueError("certificates are built on the unit domain")
    params = residue_params(k, l)

    chain = _ChainBuilder(1, Color.BLUE)
    chain.force(l, Color.RED, _w(Color.BLUE, [(1, l)], l))
    chain.force(k * l, Color.BLUE, _w(Color.RED, [(l, k)], k * l))
    chain.force(k, Color.RED, _w(Color.BLUE, [(k, l)], k * l))
    chain.force(
        l + 1, Color.RED, _w(Color.BLUE, [(1, l - k + 1), (l + 1, k - 1)], k * l)
    )
    chain.force(
        params.mixed_sum,
        Color.BLUE,
        _w(Color.RED, [(k, k - params.mix_count), (l, params.mix_count)], params.mixed_sum),
    )
    if params.residue == 0:
        chain.close(_w(Color.BLUE, [(1, l - 1), (params.mixed_sum, 1)], k * l))
    else:
        chain.force(
            2,
            Color.RED,
            _w(
                Color.BLUE,
                [(1, l - params.residue - 1), (2, params.residue), (params.mixed_sum, 1)],
                k * l,
            ),
        )
        chain.force(2 * k, Color.BLUE, _w(Color.RED, [(2, k)], 2 * k))
        chain.force(
            2 * k + l - 1, Color.BLUE, _w(Color.RED, [(2, k - 1), (l + 1, 1)], 2 * k + l - 1)
        )
        chain.close(_w(Color.BLUE, [(1, l - 1), (2 * k, 1)], 2 * k + l - 1))

    node = chain.node()
    result = verify_branch(spec, Fraction(k * l + k - 1), node)
    if not result.ok:
        raise RuntimeError(f"built branch failed its own check: {result.failure}")
    return node


# ---------------------------------------------------------------------------
# Automatic prover


class _SatisfiableGrid(Exception):
    """A total conflict-free grid coloring appeared, so no refutation exists."""


def _grid_system(spec: ProblemSpec, denominator: int) -> tuple[ClauseSystem, int]:
    """Clauses over grid indices: index i stands for the value 1 + i/d."""
    k, l = spec.k, spec.l
    d = denominator
    top = (k * l + k - 1 - 1) * d  # index of the domain end

    def value(i: int) -> Fraction:
        return 1 + Fraction(i, d)

    clauses: list[Clause] = []
    for color, m in ((Color.RED, k), (Color.BLUE, l)):
        # index identity: sum of m grid values = value((m-1)*d + sum of indices)
        def emit(prefix: list[int], lo: int, index_sum: int) -> None:
            if len(prefix) == m:
                x0 = (m - 1) * d + index_sum
                witness = SolutionWitness.from_values(color, [value(i) for i in prefix], value(x0))
                entries = tuple(sorted({*prefix, x0}))
                mask = 0
                for e in entries:
                    mask |= 1 << e
                clauses.append(Clause(color, entries, mask, witness))
                return
            remaining = m - len(prefix)
            i = lo
            while (m - 1) * d + index_sum + i * remaining <= top:
                prefix.append(i)
                emit(prefix, i, index_sum + i)
                prefix.pop()
                i += 1

        emit([], 0, 0)
    return ClauseSystem(top + 1, clauses), top


def auto_prove(
    spec: ProblemSpec,
    grid_denominator: int,
    assumptions: Sequence[tuple],
    max_branch_depth: int = 64,
) -> Optional[BranchNode]:
    """Search for a closing branch tree on the 1/d grid of [1, kl+k-1].

    DPLL over grid points: propagate unit forcings, branch on the smallest
    undecided grid value (red first) when stuck.  The final assumption becomes
    the returned node; earlier assumptions are ambient pre-colored context.
    Returns None on grid or depth exhaustion, and immediately when some branch
    completes a valid total grid coloring (then no refutation can exist).
    The emitted node is re-verified before being returned.
    """
    if spec.gamma != 1:
        raise ValueError("the grid prover runs on the unit domain")
    if not isinstance(grid_denominator, int) or grid_denominator < 1:
        raise ValueError(f"need a positive integer denominator, got {grid_denominator!r}")
    if not assumptions:
        raise ValueError("at least one assumption is required")

    system, top = _grid_system(spec, grid_denominator)
    d = grid_denominator

    def to_index(point) -> int:
        point = exact_fraction(point)
        scaled = (point - 1) * d
        if scaled.denominator != 1 or not 0 <= scaled <= top:
            raise ValueError(f"{format_rational(point)} is not a grid point")
        return int(scaled)

    def value(i: int) -> Fraction:
        return 1 + Fraction(i, d)

    indexed: list[tuple[int, Color]] = []
    for point, color in assumptions:
        idx = to_index(point)
        if any(idx == seen for seen, _ in indexed):
            raise ValueError(f"duplicate assumption on {format_rational(exact_fraction(point))}")
        indexed.append((idx, color))

    all_mask = (1 << (top + 1)) - 1
    clauses = system.clauses

    def as_steps(forcings: list[tuple[int, int]]) -> tuple[ForcingStep, ...]:
        return tuple(
            ForcingStep(value(v), clauses[cid].color.opposite, clauses[cid].witness)
            for v, cid in forcings
        )

    def prove(
        idx: int, color: Color, red: int, blue: int, pending: list[int], depth: int
    ) -> Optional[BranchNode]:
        bit = 1 << idx
        red, blue = (red | bit, blue) if color is Color.RED else (red, blue | bit)
        red, blue, forcings, conflict = propagate_masks(system, red, blue, pending)
        steps = as_steps(forcings)
        if conflict is not None:
            return BranchNode(value(idx), color, steps, clauses[conflict].witness)
        free = all_mask & ~(red | blue)
        if free == 0:
            raise _SatisfiableGrid
        if depth <= 0:
            return None
        split = (free & -free).bit_length() - 1
        children = []
        for child_color in (Color.RED, Color.BLUE):
            child = prove(split, child_color, red, blue, [split], depth - 1)
            if child is None:
                return None
            children.append(child)
        return BranchNode(value(idx), color, steps, children=(children[0], children[1]))

    ambient_red = ambient_blue = 0
    for idx, color in indexed[:-1]:
        if color is Color.RED:
            ambient_red |= 1 << idx
        else:
            ambient_blue |= 1 << idx
    last_idx, last_color = indexed[-1]
    if (ambient_red | ambient_blue) >> last_idx & 1:
        raise ValueError("final assumption repeats an ambient point")

    try:
        node = prove(
            last_idx,
            last_color,
            ambient_red,
            ambient_blue,
            [idx for idx, _ in indexed],
            max_branch_depth,
        )
    except _SatisfiableGrid:
        return None
    if node is None:
        return None
    ambient = {exact_fraction(p): c for p, c in assumptions[:-1]}
    end = Fraction(spec.k * spec.l + spec.k - 1)
    result = verify_branch(spec, end, node, ambient)
    if not result.ok:
        raise RuntimeError(f"auto-proved branch failed its own check: {result.failure}")
    return node


def certify_upper(
    spec: ProblemSpec,
    auto_denominator: int = 1,
    max_depth: int = 64,
    force_auto: bool = False,
) -> ForcingCertificate:
    """Assemble and verify the full branch-on-the-endpoint certificate.

    Default assembly: k=2 uses the hand-built half-step chains; k < l pairs
    the built blue-start branch with an auto-proved red branch on the integer
    grid; the diagonal k = l >= 3 auto-proves both branches.  With
    ``force_auto`` every branch is searched at ``auto_denominator`` instead.
    Raises UnprovedError when a search exhausts, never returns unchecked
    output.
    """
    if spec.gamma != 1:
        raise ValueError("certificates are built on the unit domain")
    end = Fraction(spec.k * spec.l + spec.k - 1)

    def auto(color: Color, denominator: int) -> BranchNode:
        node = auto_prove(spec, denominator, [(Fraction(1), color)], max_depth)
        if node is None:
            raise UnprovedError(spec, color.value, denominator, max_depth)
        return node

    if force_auto:
        red = auto(Color.RED, auto_denominator)
        blue = auto(Color.BLUE, auto_denominator)
        certificate = ForcingCertificate(spec, end, (red, blue))
    elif spec.k == 2:
        certificate = build_k2_certificate(spec.l)
    elif spec.k < spec.l:
        blue = build_blue1_certificate(spec)
        red = auto(Color.RED, auto_denominator)
        certificate = ForcingCertificate(spec, end, (red, blue))
    else:
        red = auto(Color.RED, auto_denominator)
        blue = auto(Color.BLUE, auto_denominator)
        certificate = ForcingCertificate(spec, end, (red, blue))

    result = verify_certificate(certificate)
    if not result.ok:
        raise RuntimeError(f"assembled certificate failed verification: {result.failure}")
    return certificate


# ---------------------------------------------------------------------------
# Serialization


def _node_as_json(node: BranchNode) -> dict:
    out: dict = {
        "assume": {"point": format_rational(node.point), "color": node.color.value},
        "steps": [
            {
                "point": format_rational(step.point),
                "forced": step.forced.value,
                "witness": step.witness.as_json(),
            }
            for step in node.steps
        ],
    }
    if node.contradiction is not None:
        out["contradiction"] = node.contradiction.as_json()
    else:
        out["children"] = [_node_as_json(child) for child in node.children]  # type: ignore[union-attr]
    return out


def _witness_from_json(obj, spec: ProblemSpec) -> SolutionWitness:
    witness = SolutionWitness.from_json(obj)
    if witness.total_multiplicity != spec.arity(witness.color):
        raise ValueError(
            f"witness arity {witness.total_multiplicity} does not match the "
            f"{witness.color.value} equation of (k={spec.k}, l={spec.l})"
        )
    return witness


def _node_from_json(obj, spec: ProblemSpec) -> BranchNode:
    if not isinstance(obj, dict) or "assume" not in obj or "steps" not in obj:
        raise ValueError("branch node must carry assume and steps")
    assume = obj["assume"]
    if not isinstance(assume, dict) or set(assume) != {"point", "color"}:
        raise ValueError("assume must carry exactly point and color")
    try:
        color = Color(assume["color"])
    except ValueError:
        raise ValueError(f"unknown color {assume['color']!r}") from None
    point = parse_rational(assume["point"])
    if not isinstance(obj["steps"], list):
        raise ValueError("steps must be a list")
    steps = []
    for item in obj["steps"]:
        if not isinstance(item, dict) or set(item) != {"point", "forced", "witness"}:
            raise ValueError("step must carry exactly point, forced, witness")
        try:
            forced = Color(item["forced"])
        except ValueError:
            raise ValueError(f"unknown color {item['forced']!r}") from None
        steps.append(
            ForcingStep(
                parse_rational(item["point"]), forced, _witness_from_json(item["witness"], spec)
            )
        )
    has_contradiction = "contradiction" in obj
    has_children = "children" in obj
    if has_contradiction == has_children:
        raise ValueError("branch node must end in exactly one of contradiction or children")
    if has_contradiction:
        return BranchNode(point, color, tuple(steps), _witness_from_json(obj["contradiction"], spec))
    children = obj["children"]
    if not (isinstance(children, list) and len(children) == 2):
        raise ValueError("children must be a pair")
    pair = (_node_from_json(children[0], spec), _node_from_json(children[1], spec))
    return BranchNode(point, color, tuple(steps), children=pair)


def certificate_as_json(certificate: ForcingCertificate) -> dict:
    return {
        "spec": certificate.spec.as_json(),
        "domain_end": format_rational(certificate.domain_end),
        "root": [_node_as_json(node) for node in certificate.root],
    }


def certificate_from_json(obj) -> ForcingCertificate:
    if not isinstance(obj, dict) or set(obj) != {"spec", "domain_end", "root"}:
        raise ValueError("certificate must carry exactly spec, domain_end, root")
    spec = ProblemSpec.from_json(obj["spec"])
    root = obj["root"]
    if not (isinstance(root, list) and len(root) == 2):
        raise ValueError("root must be a pair of branch nodes")
    return ForcingCertificate(
        spec,
        parse_rational(obj["domain_end"]),
        (_node_from_json(root[0], spec), _node_from_json(root[1], spec)),
    )
