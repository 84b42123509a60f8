"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class PendantPackError(Exception):
    code = "error"


class InvalidVertex(PendantPackError, ValueError):
    code = "invalid_vertex"


class InvalidParameter(PendantPackError, ValueError):
    code = "invalid_parameter"


class InvalidDigraph(PendantPackError, ValueError):
    code = "invalid_digraph"


class NotStrong(PendantPackError, ValueError):
    code = "not_strong"


class InvalidNetwork(PendantPackError, ValueError):
    code = "invalid_network"


class FanNotFound(PendantPackError):
    code = "fan_not_found"


class PathsNotFound(PendantPackError):
    code = "paths_not_found"


class DecompositionError(PendantPackError):
    code = "decomposition_error"


class NotPendantTree(PendantPackError, ValueError):
    code = "not_pendant_tree"


class NotOnPath(PendantPackError, ValueError):
    code = "not_on_path"


class NotArborescence(PendantPackError, ValueError):
    """Raised by tree assembly; ``condition`` is one of
    ``arc_not_in_host``, ``multiple_parents``, ``root_has_parent``,
    ``cycle``, ``disconnected``."""

    code = "not_arborescence"

    def __init__(self, condition, witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(f"{condition}: {witness!r}")


class PreconditionViolated(PendantPackError):
    code = "precondition_violated"


class InternalContractViolation(PendantPackError):
    """The construction broke its own guarantees: a flow step found too few
    paths, or the assembled family failed verification. ``trace`` holds the
    partial construction trace."""

    code = "internal_contract_violation"

    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)


class InstanceTooLarge(PendantPackError):
    code = "instance_too_large"
