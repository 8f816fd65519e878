"""Exception hierarchy with module-qualified error codes."""

from typing import Any


class ReidGaleError(Exception):
    """Base error. `code` reads `<module>.<Name>`, e.g. `group_action.NotSL`."""

    module = "reid_gale"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def code(self) -> str:
        return f"{self.module}.{type(self).__name__}"

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


# exact_zmat

class ZMatrixError(ReidGaleError):
    module = "exact_zmat"


class DimensionMismatch(ZMatrixError):
    pass


class NotSurjective(ZMatrixError):
    pass


# group_action

class GroupActionError(ReidGaleError):
    module = "group_action"


class NotSL(GroupActionError):
    pass


class NotFaithful(GroupActionError):
    pass


class DegenerateWeight(GroupActionError):
    pass


# input files

class SchemaError(ReidGaleError):
    module = "io"


class OutputError(ReidGaleError):
    module = "io"


# crepant_fan

class FanError(ReidGaleError):
    module = "crepant_fan"


class ValidationError(FanError):
    pass


class NonIntegralRelation(FanError):
    pass


class OpenStar(FanError):
    pass


# taut_bundles

class BundleError(ReidGaleError):
    module = "taut_bundles"


class NotLocallyFree(BundleError):
    pass


class InconsistentSupport(BundleError):
    pass


class NonIntegralDegree(BundleError):
    pass


# exc_surfaces

class SurfaceError(ReidGaleError):
    module = "exc_surfaces"


class InconsistentDegrees(SurfaceError):
    pass


class NonIntegralChi(SurfaceError):
    pass


# gale_reid

class GaleError(ReidGaleError):
    module = "gale_reid"


class RankMismatch(GaleError):
    pass


class NotUnimodular(GaleError):
    pass


class NotABasis(GaleError):
    pass


class NotAKernelBasis(GaleError):
    pass
