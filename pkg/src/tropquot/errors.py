"""Exception hierarchy.  Everything raised on bad mathematical input derives from TropError."""


class TropError(ValueError):
    pass


class RankError(TropError):
    """Vectors or cones from lattices of different rank were mixed."""


class FanError(TropError):
    """A cone is not in the fan, or the fan data are malformed."""


class UnsupportedConeError(TropError):
    """Requested computation is outside what is supported (non-pointed cone, rank guard)."""


class ChartError(TropError):
    """An exponent or polynomial does not live in an admissible chart semigroup."""


class ParseError(TropError):
    """Malformed input file or literal."""
