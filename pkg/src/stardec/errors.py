"""Exception types shared across the package.

Every error carries the offending datum (vertex index, byte position, ...)
so callers and the CLI can report precisely what went wrong.
"""


class StardecError(Exception):
    """Base class for all package errors."""


class LoopRejected(StardecError):
    def __init__(self, v):
        self.vertex = v
        super().__init__(f"loops are not allowed (vertex {v})")


class VertexOutOfRange(StardecError):
    def __init__(self, v, n):
        self.vertex = v
        self.n = n
        super().__init__(f"vertex {v} out of range 0..{n - 1}")


class UniverseExceeded(StardecError):
    def __init__(self, n, bound):
        self.n = n
        self.bound = bound
        super().__init__(f"{n} vertices exceeds the universe bound {bound}")


class MalformedGraph6(StardecError):
    def __init__(self, position, reason):
        self.position = position
        self.reason = reason
        super().__init__(f"malformed graph6 at byte {position}: {reason}")


class NotSimple(StardecError):
    pass


class ParityMismatch(StardecError):
    pass


class BudgetExceeded(StardecError):
    def __init__(self, nodes):
        self.nodes = nodes
        super().__init__(f"search abandoned after {nodes} nodes")


class PreconditionViolated(StardecError):
    def __init__(self, v, message):
        self.vertex = v
        super().__init__(f"vertex {v}: {message}")


class SizeNotDivisible(StardecError):
    def __init__(self, m, k):
        self.m = m
        self.k = k
        super().__init__(f"edge count {m} is not divisible by k={k}")


class MaxDegreeTooLarge(StardecError):
    def __init__(self, delta, k):
        self.delta = delta
        self.k = k
        super().__init__(f"maximum degree {delta} exceeds 2k-1={2 * k - 1}")


class NotFourRegular(StardecError):
    pass


class Disconnected(StardecError):
    pass


class NotTwoConnected(StardecError):
    pass


class UniverseTooLarge(StardecError):
    def __init__(self, n, limit):
        self.n = n
        self.limit = limit
        super().__init__(f"brute force limited to {limit} vertices, got {n}")


class InvalidRotation(StardecError):
    pass


class BlockInvariantViolated(StardecError):
    pass


class KTooSmall(StardecError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"k={k} is too small for this family; the 48n-vertex builder covers k=3")


class ParityImpossible(StardecError):
    def __init__(self, n, d):
        super().__init__(f"no {d}-regular graph on {n} vertices: n*d must be even and d < n")


class NotDivisibleByThree(StardecError):
    def __init__(self, n):
        super().__init__(f"order {n} is not divisible by 3")


class RefusedScale(StardecError):
    def __init__(self, n):
        self.n = n
        super().__init__(
            f"order {n} is beyond desk scale (~1e9 graphs at order 18); "
            "pass allow_large/--allow-large to run anyway"
        )


class TranscriptionMissing(StardecError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"no data file for known graph {name!r}")


class ClaimFailed(StardecError):
    def __init__(self, name, claim, detail=""):
        self.graph_name = name
        self.claim = claim
        super().__init__(f"{name}: claim {claim!r} failed{': ' + detail if detail else ''}")


class MalformedFile(StardecError):
    def __init__(self, path, line, reason):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {reason}")
