"""Minimal Sullivan models by degreewise mapping-cone extensions.

For a connected, simply connected target W the model M is built degree by
degree: at stage n, generators dual to H^n of the mapping cone of the current
morphism f: M -> W are adjoined (one batch per weight block when W is
weighted), with d(v) the cone class's M-component and f(v) its W-component.
The stage repeats until the cone is exact in degree n, capped by a
configurable iteration bound; for simply connected targets the loop
terminates after the kernel of H^{n+1}(f) is killed.

The differential of every adjoined generator is decomposable because a linear
term in degree n+1 would need a generator of that degree, which never exists
at stage n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CdgaMorphism, CdgaPresentation, Element, Generator, reinterpret
from .cohomology import CochainComplex, QuasiIsoReport, h_block, is_quasi_iso, morphism_map
from .errors import ValidationError
from .linalg import TrackedEchelon
from .weight import attach_weights

Q1 = Fraction(1)

DEFAULT_ITERATION_CAP = 32


class _ConeComplex(CochainComplex):
    """Mapping cone of f: M -> W with d(a, m) = (da - f(m), -dm).

    Degree n holds W^n (+) M^{n+1}; keys are tagged ('a', powers) and
    ('m', powers).  Weight blocks are shared: f preserves weights.
    """

    def __init__(self, f):
        super().__init__()
        self.f = f
        self.W = f.target
        self.M = f.source
        self.truncation = max(self.W.truncation_degree, self.M.truncation_degree)
        self.weighted = self.W.weighted and self.M.weighted

    def block_weights(self, n):
        if not self.weighted:
            return [None]
        ws = set()
        for powers in self.W.basis(n):
            ws.add(self.W.powers_weight(powers))
        for powers in self.M.basis(n + 1):
            ws.add(self.M.powers_weight(powers))
        return sorted(ws)

    def block_keys(self, n, p=None):
        a_keys = [
            ("a", powers)
            for powers in self.W.basis(n)
            if p is None or self.W.powers_weight(powers) == p
        ]
        m_keys = [
            ("m", powers)
            for powers in self.M.basis(n + 1)
            if p is None or self.M.powers_weight(powers) == p
        ]
        return a_keys + m_keys

    def _d_key(self, n, p, key, target_index):
        kind, powers = key
        col = {}
        if kind == "a":
            img = self.W.d_monomial(powers)
            for pw, c in img.terms.items():
                col[target_index[("a", pw)]] = c
        else:
            fm = self.f.apply(Element(self.M, {powers: Q1}))
            for pw, c in fm.terms.items():
                idx = target_index.get(("a", pw))
                if idx is not None:
                    col[idx] = col.get(idx, Fraction(0)) - c
            dm = self.M.d_monomial(powers)
            for pw, c in dm.terms.items():
                col[target_index[("m", pw)]] = col.get(target_index[("m", pw)], Fraction(0)) - c
        return {k: v for k, v in col.items() if v}

    def element_of(self, n, vec, p=None):
        keys = self.block_keys(n, p)
        a_terms, m_terms = {}, {}
        for i, c in vec.items():
            kind, powers = keys[i]
            (a_terms if kind == "a" else m_terms)[powers] = c
        return Element(self.W, a_terms), Element(self.M, m_terms)


@dataclass
class StageInfo:
    degree: int
    added: int
    iterations: int
    capped: bool


@dataclass
class MinimalModelResult:
    model: CdgaPresentation
    morphism: CdgaMorphism
    target: CdgaPresentation
    quasi_iso: QuasiIsoReport
    injective_above: bool
    stages: list
    auto_weighted: bool

    @property
    def capped(self):
        return any(s.capped for s in self.stages)


def has_decomposable_differential(pres):
    """No differential contains a linear (single-generator, exponent-1) term."""
    for g in pres.generators:
        for powers in pres.differential_of(g.name).terms:
            if len(powers) == 1 and powers[0][1] == 1:
                return False
    return True


def minimal_model(target, up_to, iteration_cap=DEFAULT_ITERATION_CAP):
    """Minimal model of a connected, simply connected presentation.

    Returns the free model M with decomposable differential, the morphism
    M -> target inducing isomorphisms on H^k for k <= up_to and a
    monomorphism on H^{up_to+1}, and per-stage bookkeeping.  Weighted targets
    give weighted models (generator weights come from the cone blocks);
    unweighted targets with zero differential are auto-weighted by degree.
    """
    if up_to < 1:
        raise ValidationError("cutoff_exceeded", "up_to must be at least 1")
    auto_weighted = False
    if not target.weighted and all(
        target.differential_of(g.name).is_zero() for g in target.generators
    ):
        target, _ = attach_weights(target, {g.name: g.degree for g in target.generators})
        auto_weighted = True

    if h_block(target.complex(), 1, None).dim != 0:
        raise ValidationError("not_simply_connected", "target has nonzero H^1")

    truncation = max(target.truncation_degree, up_to + 2)
    weighted = target.weighted

    gen_specs = []  # (name, degree, weight)
    diff_elements = {}  # name -> Element over the current model
    f_images = {}  # name -> Element over the target

    def rebuild():
        gens = [Generator(n, d, w) for n, d, w in gen_specs]
        model = CdgaPresentation(gens, truncation)
        for name in diff_elements:
            diff_elements[name] = reinterpret(diff_elements[name], model)
            model.set_differential(name, diff_elements[name])
        model.finalize()
        return model, CdgaMorphism(model, target, dict(f_images))

    model = CdgaPresentation([], truncation)
    model.finalize()
    f = CdgaMorphism(model, target, {})
    stages = []

    for degree in range(2, up_to + 1):
        iterations = 0
        added_total = 0
        capped = False
        while True:
            cone = _ConeComplex(f)
            new_gens = []
            for p in cone.block_weights(degree):
                block = h_block(cone, degree, p)
                for rep in block.reps:
                    a_part, m_part = cone.element_of(degree, rep, p)
                    new_gens.append((p, a_part, m_part))
            if not new_gens:
                break
            if iterations >= iteration_cap:
                capped = True
                break
            existing = sum(1 for n, d, w in gen_specs if d == degree)
            for offset, (p, a_part, m_part) in enumerate(new_gens):
                name = f"v{degree}_{existing + offset}"
                gen_specs.append((name, degree, p if weighted else None))
                diff_elements[name] = m_part
                f_images[name] = a_part
            model, f = rebuild()
            added_total += len(new_gens)
            iterations += 1
        stages.append(StageInfo(degree, added_total, iterations, capped))

    qreport = is_quasi_iso(f, up_to)
    injective = _injective_at(f, up_to + 1)
    return MinimalModelResult(
        model=model,
        morphism=f,
        target=target,
        quasi_iso=qreport,
        injective_above=injective,
        stages=stages,
        auto_weighted=auto_weighted,
    )


def _injective_at(f, degree):
    lm = morphism_map(f)
    sb = h_block(lm.source, degree, None)
    tb = h_block(lm.target, degree, None)
    ech = TrackedEchelon()
    rank = 0
    for rep in sb.reps:
        coords = tb.class_coords(lm.apply_vec(degree, rep))
        if coords:
            added, _ = ech.insert(coords, {})
            if added:
                rank += 1
    return rank == sb.dim
