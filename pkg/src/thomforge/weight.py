"""Weight decompositions and the purity route to formality.

A weight decomposition is an extra integer grading with d weight-preserving
and products weight-additive; on a presentation this amounts to one weight
per generator with every differential weight-homogeneous.  When the
cohomology is pure (H^n concentrated in weight n), the canonical truncation
tau sits in a zig-zag  tau A -> A  and  tau A ->> H(A)  of quasi-isomorphisms,
which is a formality certificate.  Failure is reported as the list of impure
(degree, weight) blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CdgaMorphism, CdgaPresentation, Element, Generator, reinterpret
from .cohomology import (
    BasisSubComplex,
    LinearMap,
    QuasiIsoReport,
    ZeroDifferentialComplex,
    graded_report,
    h_block,
    quasi_iso_report,
)
from .errors import ValidationError
from .linalg import nullspace
from .thom import ThomModel, thom_model

Q1 = Fraction(1)


def attach_weights(presentation, weights):
    """Attach a weight to every generator; returns (weighted copy, positive?).

    Positivity means every generator of positive degree has positive weight
    (the degree-0 part is the unit line in weight 0 by construction).
    """
    gens = []
    for g in presentation.generators:
        if g.name not in weights:
            raise ValidationError("weight_violation", f"no weight given for generator {g.name!r}")
        gens.append(Generator(g.name, g.degree, int(weights[g.name]), g.hodge_type))
    weighted = CdgaPresentation(gens, presentation.truncation_degree)
    for g in presentation.generators:
        weighted.set_differential(g.name, reinterpret(presentation.differential_of(g.name), weighted))
    weighted.finalize()
    positive = all(g.weight > 0 for g in weighted.generators)
    return weighted, positive


def weighted_cohomology(presentation, up_to):
    """Bigraded Betti data: per degree and per weight, with representatives."""
    if not presentation.weighted:
        raise ValidationError("weight_violation", "presentation carries no weights")
    if up_to > presentation.truncation_degree - 1:
        raise ValidationError("cutoff_exceeded", "requested degree exceeds the truncation")
    return graded_report(presentation.complex(), up_to, with_weights=True)


@dataclass
class PureTruncation:
    """The weight-n truncation of a weighted complex, with its inclusion."""

    ambient: object  # CochainComplex
    subcomplex: BasisSubComplex
    block_dims: dict

    def inclusion(self):
        sub = self.subcomplex

        def apply_key(n, key):
            return sub.ambient_vector(n, key)

        return LinearMap(sub, self.ambient, apply_key)


def pure_truncation(obj, up_to=None):
    """Canonical truncation: kill weights below the degree, keep kernel at
    weight = degree, keep everything above.

    Accepts a weighted presentation or a weighted Thom model; the result is a
    sub-cochain-complex given by explicit bases per (degree, weight) block.
    """
    cx = _weighted_complex(obj)
    top = up_to if up_to is not None else cx.truncation
    blocks = {}
    for n in range(top + 1):
        for p in cx.block_weights(n):
            keys = cx.block_keys(n, p)
            if not keys:
                continue
            if p < n:
                continue
            if p > n:
                blocks[(n, p)] = [{i: Q1} for i in range(len(keys))]
            else:
                cols = cx.d_block(n, p)
                blocks[(n, p)] = nullspace(cols)
    blocks = {k: v for k, v in blocks.items() if v}
    sub = BasisSubComplex(cx, blocks)
    dims = {k: len(v) for k, v in sorted(blocks.items())}
    return PureTruncation(ambient=cx, subcomplex=sub, block_dims=dims)


def _weighted_complex(obj):
    if isinstance(obj, CdgaPresentation):
        if not obj.weighted:
            raise ValidationError("weight_violation", "presentation carries no weights")
        return obj.complex()
    if isinstance(obj, ThomModel):
        if not obj.weighted:
            raise ValidationError("weight_violation", "Thom model carries no weights")
        return obj.complex()
    raise ValidationError("mixed_presentations", "expected a weighted presentation or Thom model")


@dataclass
class FormalityCertificate:
    """Either a purity certificate (two verified quasi-isomorphisms) or the
    list of obstructing (degree, weight, dimension) blocks."""

    pure: bool
    up_to: int
    obstructions: list
    truncation_dims: dict | None = None
    inclusion_report: QuasiIsoReport | None = None
    projection_report: QuasiIsoReport | None = None

    @property
    def ok(self):
        return (
            self.pure
            and self.inclusion_report is not None
            and self.inclusion_report.ok
            and self.projection_report is not None
            and self.projection_report.ok
        )


def formality_certificate(obj, up_to):
    """Purity-based formality check up to a degree.

    If H^n is concentrated in weight n for all n <= up_to, builds the
    truncation zig-zag and verifies both legs are quasi-isomorphisms;
    otherwise returns the impure blocks as obstructions.
    """
    cx = _weighted_complex(obj)
    if up_to > cx.truncation - 1:
        raise ValidationError("cutoff_exceeded", "requested degree exceeds the truncation")
    obstructions = []
    for n in range(up_to + 1):
        for p in cx.block_weights(n):
            if p == n:
                continue
            dim = h_block(cx, n, p).dim
            if dim:
                obstructions.append((n, p, dim))
    if obstructions:
        return FormalityCertificate(pure=False, up_to=up_to, obstructions=obstructions)
    tau = pure_truncation(obj, up_to=up_to + 1)
    inclusion = tau.inclusion()
    inclusion_report = quasi_iso_report(inclusion, up_to)
    target = ZeroDifferentialComplex(cx, up_to + 1)
    sub = tau.subcomplex

    def project_key(n, key):
        # the projection kills weights above the degree and takes classes at
        # weight = degree; target coordinates are ambient class coordinates
        p, _ = key
        if p != n:
            return {}
        amb = sub.ambient_vector(n, key)
        return h_block(cx, n, None).class_coords(amb)

    projection = LinearMap(sub, target, project_key)
    projection_report = quasi_iso_report(projection, up_to)
    return FormalityCertificate(
        pure=True,
        up_to=up_to,
        obstructions=[],
        truncation_dims=tau.block_dims,
        inclusion_report=inclusion_report,
        projection_report=projection_report,
    )


def thom_weights(weighted_base, euler, rank, zero_euler_weight=None):
    """Weighted Thom model: suspended weights shift by the Euler weight.

    Requires a weight-homogeneous Euler element (a zero Euler element takes a
    declared weight).  Weight-preservation of d and additivity of products
    are structural here, and are spot-verified on low-degree basis pairs.
    """
    if not weighted_base.weighted:
        raise ValidationError("weight_violation", "base carries no weights")
    if euler.is_zero() and zero_euler_weight is None:
        raise ValidationError(
            "euler_inhomogeneous",
            "a zero Euler element needs a declared weight (zero_euler_weight)",
        )
    model = thom_model(weighted_base, euler, rank, zero_euler_weight=zero_euler_weight)
    cx = model.complex()
    top = min(model.truncation_degree, model.shift + 4)
    for n in range(model.shift, top + 1):
        for p in cx.block_weights(n):
            for key in cx.block_keys(n, p):
                w = model.base.powers_weight(key) + model.euler_weight
                if w != p:
                    raise ValidationError("weight_violation", "suspended weight bookkeeping broke")
                img = model.base.d_monomial(key)
                for powers in img.terms:
                    if model.base.powers_weight(powers) != model.base.powers_weight(key):
                        raise ValidationError("weight_violation", "d does not preserve weights")
    return model


def positivity(model_or_presentation):
    """Whether all positive-degree parts sit in positive weights."""
    if isinstance(model_or_presentation, ThomModel):
        base = model_or_presentation.base
        ew = model_or_presentation.euler_weight
        if ew is None:
            raise ValidationError("weight_violation", "Thom model carries no weights")
        base_ok = all(g.weight > 0 for g in base.generators)
        return base_ok and ew > 0
    pres = model_or_presentation
    if not pres.weighted:
        raise ValidationError("weight_violation", "presentation carries no weights")
    return all(g.weight > 0 for g in pres.generators)


def weight_scaling(weighted, scalar):
    """The endomorphism multiplying the weight-p component by scalar^p.

    Weight-preservation of d and additivity of weights make this a cdga
    morphism; on H^n_p it induces multiplication by scalar^p.
    """
    scalar = Fraction(scalar)
    if scalar == 0:
        raise ValidationError("weight_violation", "scaling by zero is not an equivalence")
    if not weighted.weighted:
        raise ValidationError("weight_violation", "presentation carries no weights")
    images = {}
    for g in weighted.generators:
        images[g.name] = weighted.gen(g.name).scale(scalar ** g.weight)
    return CdgaMorphism(weighted, weighted, images)
