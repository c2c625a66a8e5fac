"""Exception hierarchy. Each error carries a machine-readable code and the CLI exit status."""


class GeometryError(Exception):
    code = "GEOMETRY"
    exit_status = 5


class SchemaError(GeometryError):
    code = "SCHEMA"
    exit_status = 2


class DeterminantError(GeometryError):
    code = "DETERMINANT"
    exit_status = 2


class NotHyperbolicError(GeometryError):
    code = "NOT_HYPERBOLIC"
    exit_status = 3


class NonDiskMapError(GeometryError):
    code = "NON_DISK_MAP"
    exit_status = 2


class NotInteriorError(GeometryError):
    code = "NOT_INTERIOR"


class CoincidentError(GeometryError):
    code = "COINCIDENT"


class IntersectingError(GeometryError):
    code = "INTERSECTING"


class AsymptoticError(GeometryError):
    code = "ASYMPTOTIC"


class NotFreeDiscreteError(GeometryError):
    code = "NOT_FREE_DISCRETE"
    exit_status = 3


class DescentTimeoutError(GeometryError):
    code = "DESCENT_TIMEOUT"
    exit_status = 4


class StoppingViolatedError(GeometryError):
    code = "STOPPING_VIOLATED"


class FrameMismatchError(GeometryError):
    code = "FRAME_MISMATCH"


class CycleFailureError(GeometryError):
    code = "CYCLE_FAILURE"


class LocateTimeoutError(GeometryError):
    code = "LOCATE_TIMEOUT"
    exit_status = 4


class HomomorphismFailureError(GeometryError):
    code = "HOMOMORPHISM_FAILURE"


class BadLabelError(GeometryError):
    code = "BAD_LABEL"


class BadBoundaryElementError(GeometryError):
    code = "BAD_BOUNDARY_ELEMENT"
