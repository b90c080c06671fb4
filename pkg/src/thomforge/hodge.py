"""Bigraded (Hodge-type) bookkeeping on presentations and Thom models.

A typed presentation assigns each generator a pair (i, j); the weight is
i + j.  The differential must preserve the bidegree and products add it, so
the induced weight decomposition is automatic.  A rank-k complex bundle
twists the Thom model by the type (k, k): the suspension of an (i, j) class
has type (i + k, j + k), weight shifted by 2k, matching the weight shift by
the Euler weight.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .thom import ThomModel, thom_model
from .weight import thom_weights


def validate_splitting(pres):
    """Check that every generator is typed and d preserves the bidegree."""
    if not pres.typed:
        raise ValidationError("weight_violation", "not every generator carries a Hodge type")
    for g in pres.generators:
        dg = pres.differential_of(g.name)
        for powers in dg.terms:
            t = pres.powers_hodge_type(powers)
            if t != g.hodge_type:
                raise ValidationError(
                    "weight_violation",
                    f"d({g.name}) contains a term of type {t}, expected {g.hodge_type}",
                )
    return True


@dataclass
class SplittingWeights:
    presentation: object
    positive: bool
    smooth_bound: bool  # every generator has i + j >= degree


def weights_from_splitting(pres):
    """The weight decomposition induced by a bigraded splitting.

    Weights are i + j per generator; validity is re-checked.  The smooth
    bound (i + j >= degree on every generator) forces positivity.
    """
    validate_splitting(pres)
    for g in pres.generators:
        if g.weight != g.hodge_type[0] + g.hodge_type[1]:
            raise ValidationError(
                "weight_violation", f"generator {g.name!r} has weight inconsistent with its type"
            )
    positive = all(g.weight > 0 for g in pres.generators)
    smooth = all(g.weight >= g.degree for g in pres.generators)
    return SplittingWeights(presentation=pres, positive=positive, smooth_bound=smooth)


def check_euler_purity(pres, e, k):
    """True iff every monomial of the Euler element has type (k, k)."""
    validate_splitting(pres)
    if not e.is_zero():
        if not e.is_homogeneous() or e.degree != 2 * k:
            raise ValidationError("degree_mismatch", f"Euler element must be homogeneous of degree {2 * k}")
    if not e.d().is_zero():
        raise ValidationError("euler_not_closed", "Euler element is not closed")
    for powers in e.terms:
        if pres.powers_hodge_type(powers) != (k, k):
            return False
    return True


@dataclass
class FilteredThomModel:
    """A Thom model with the Tate-twisted bigrading of a rank-k bundle."""

    model: ThomModel
    chern_rank: int

    @property
    def base(self):
        return self.model.base

    def type_of(self, powers):
        i, j = self.base.powers_hodge_type(powers)
        k = self.chern_rank
        return (i + k, j + k)

    def weight_of(self, powers):
        i, j = self.type_of(powers)
        return i + j

    def weight_filtration_dim(self, p, n):
        """dim W_p in model degree n: base classes of weight <= p - 2k."""
        k = self.chern_rank
        count = 0
        for powers in self.base.basis(n - 2 * k):
            if self.base.powers_weight(powers) <= p - 2 * k:
                count += 1
        return count

    def hodge_filtration_dim(self, p, n):
        """dim F^p in model degree n: base classes with first index >= p - k."""
        k = self.chern_rank
        count = 0
        for powers in self.base.basis(n - 2 * k):
            if self.base.powers_hodge_type(powers)[0] >= p - k:
                count += 1
        return count


def thom_mhs(pres, e, k):
    """The Thom model of a pure rank-k Euler class, with its shifted bigrading.

    Raises euler_not_pure when the Euler element mixes types.  The underlying
    weighted model agrees with the plain weight-shift construction, which is
    checked on every basis element.
    """
    if not check_euler_purity(pres, e, k):
        raise ValidationError("euler_not_pure", "Euler element is not pure of type (k, k)")
    model = thom_weights(pres, e, 2 * k, zero_euler_weight=2 * k if e.is_zero() else None)
    filtered = FilteredThomModel(model=model, chern_rank=k)
    top = min(model.truncation_degree, 2 * k + 6)
    for n in range(2 * k, top + 1):
        for powers in pres.basis(n - 2 * k):
            plain = pres.powers_weight(powers) + model.euler_weight
            if filtered.weight_of(powers) != plain:
                raise ValidationError("weight_violation", "Tate twist disagrees with the weight shift")
    return filtered
