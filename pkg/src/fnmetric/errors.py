"""Exception types shared across the package."""


class FNMetricError(Exception):
    """Base class. ``code`` is the machine-readable name used by the CLI."""

    code = "FNMetricError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def as_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


def _make(name, doc):
    cls = type(name, (FNMetricError,), {"__doc__": doc, "code": name})
    return cls


EllipticElement = _make("EllipticElement", "Trace below 2 in absolute value.")
InvalidLength = _make("InvalidLength", "Length outside the admissible range.")
DecompositionMismatch = _make("DecompositionMismatch", "Points live on different decompositions.")
IncomparablePoints = _make("IncomparablePoints", "Cusp compared against a positive boundary length.")
NoTwistParameter = _make("NoTwistParameter", "Boundary or cusp curves carry no twist.")
NotMovable = _make("NotMovable", "Only interior curves admit an elementary move.")
OverlappingNeighborhoods = _make("OverlappingNeighborhoods", "Designated move neighborhoods intersect.")
FiniteOnly = _make("FiniteOnly", "Operation needs a finite decomposition.")
TwistRecoveryFailed = _make("TwistRecoveryFailed", "Root finder could not bracket the twist.")
NotRealizable = _make("NotRealizable", "Parameters do not give a hyperbolic structure.")
BadGrid = _make("BadGrid", "Sweep grid must be strictly descending and positive.")
BadConfiguration = _make("BadConfiguration", "Curve does not meet the required transversality.")
AngleConditionFailed = _make("AngleConditionFailed", "Could not reach cos(theta) >= 1/2.")
BadBasePoint = _make("BadBasePoint", "Base point does not have shrinking designated curves.")
BadInput = _make("BadInput", "Malformed user input.")
