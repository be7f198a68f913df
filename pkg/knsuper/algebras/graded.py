"""
Pairs (even density, odd density) of fixed weights: the carrier shared by the
Lie superalgebra, the antialgebra and their geometric duals.
"""
from knsuper.core.coeffield import as_scalar
from knsuper.core.densities import Density, HalfInt
from knsuper.core.errors import IncompatibleConfig, NonHomogeneousInput, WeightMismatch
from knsuper.core.merofun import PunctureConfig


def sign(exponent: int) -> int:
    """(-1)^exponent."""
    return -1 if exponent % 2 else 1


class GradedPair:
    """Even plus odd density with fixed weights; shared by elements and duals."""

    EVEN_WEIGHT: HalfInt
    ODD_WEIGHT: HalfInt

    __slots__ = ("even", "odd")

    def __init__(self, even: Density, odd: Density):
        if even.weight != self.EVEN_WEIGHT or odd.weight != self.ODD_WEIGHT:
            raise WeightMismatch(
                f"{type(self).__name__} needs weights ({self.EVEN_WEIGHT}, {self.ODD_WEIGHT}), "
                f"got ({even.weight}, {odd.weight})"
            )
        if even.cfg.mode != odd.cfg.mode:
            raise IncompatibleConfig("even and odd parts live on different configurations")
        self.even = even
        self.odd = odd

    @classmethod
    def zero(cls, cfg: PunctureConfig):
        return cls(Density.zero(cls.EVEN_WEIGHT, cfg), Density.zero(cls.ODD_WEIGHT, cfg))

    @classmethod
    def from_density(cls, d: Density):
        if d.weight == cls.EVEN_WEIGHT:
            return cls(d, Density.zero(cls.ODD_WEIGHT, d.cfg))
        if d.weight == cls.ODD_WEIGHT:
            return cls(Density.zero(cls.EVEN_WEIGHT, d.cfg), d)
        raise WeightMismatch(f"weight {d.weight} is not a component of {cls.__name__}")

    @property
    def cfg(self) -> PunctureConfig:
        return self.even.cfg

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def parity(self) -> int:
        """0 or 1 for homogeneous elements (zero counts as even)."""
        if not self.even.is_zero() and not self.odd.is_zero():
            raise NonHomogeneousInput(f"{self!r} has both even and odd parts")
        return 1 if not self.odd.is_zero() else 0

    def __add__(self, other):
        return type(self)(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        return type(self)(self.even - other.even, self.odd - other.odd)

    def __neg__(self):
        return type(self)(-self.even, -self.odd)

    def scale(self, factor):
        factor = as_scalar(factor)
        return type(self)(self.even.scale(factor), self.odd.scale(factor))

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.even, self.odd))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.even!r}, {self.odd!r})"
