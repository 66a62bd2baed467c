"""Exception hierarchy shared by every engine subsystem."""


class GrafitoError(Exception):
    """Base class for all engine errors."""


# --- storage ---------------------------------------------------------------

class UnknownNodeError(GrafitoError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"unknown node id: {node_id}")


class UnknownEdgeError(GrafitoError):
    def __init__(self, edge_id):
        self.edge_id = edge_id
        super().__init__(f"unknown edge id: {edge_id}")


class TypeMismatchError(GrafitoError):
    """A value's type conflicts with the column, weight, or comparison it is used in."""


class UniqueViolationError(GrafitoError):
    def __init__(self, label, keys, key_tuple):
        self.label = label
        self.keys = tuple(keys)
        self.key_tuple = tuple(key_tuple)
        super().__init__(
            f"unique constraint on :{label}({', '.join(keys)}) violated for {key_tuple!r}"
        )


class UnknownIndexError(GrafitoError):
    def __init__(self, label, keys):
        self.label = label
        self.keys = tuple(keys)
        super().__init__(f"no index on :{label}({', '.join(keys)})")


class ArityMismatchError(GrafitoError):
    """Lookup tuple arity does not match the index key list."""


class CapacityError(GrafitoError):
    """Store grew past the packed-adjacency limits (nodes/edges/types)."""


# --- csr / analytics -------------------------------------------------------

class OutOfRangeError(GrafitoError):
    """Vertex index outside a view's range."""


class ReverseNotBuiltError(GrafitoError):
    """Inbound access on a view projected without the reverse CSR."""


class EmptyGraphError(GrafitoError):
    """Algorithm requires at least one vertex."""


class NegativeWeightError(GrafitoError):
    def __init__(self, weight):
        self.weight = weight
        super().__init__(f"negative edge weight: {weight}")


class SameSourceSinkError(GrafitoError):
    """Max-flow source and sink must differ."""


class DegenerateInputError(GrafitoError):
    """PCA input too small to define principal directions."""


# --- query -----------------------------------------------------------------

class QuerySyntaxError(GrafitoError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"syntax error at line {line}, column {column}: {message}")


class UnboundVariableError(GrafitoError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"variable '{name}' is not bound by MATCH or CREATE")


class PlanningError(GrafitoError):
    """Internal planner contradiction; indicates a bug, not bad input."""


class MissingParameterError(GrafitoError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"query parameter ${name} was not supplied")


class UnknownProcedureError(GrafitoError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown procedure: {name}")


# --- vector ----------------------------------------------------------------

class DimensionMismatchError(GrafitoError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"vector dimension mismatch: index has {expected}, query has {got}")


class EmptyIndexError(GrafitoError):
    """k-NN search on an index with no vectors."""


# --- optimization ----------------------------------------------------------

class ConfigMismatchError(GrafitoError):
    """Solver config inconsistent with the problem (objectives, population, parameters)."""


class UnknownLabelError(GrafitoError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label '{label}' has no nodes")


class NonNumericPropertyError(GrafitoError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"property '{key}' is not numeric on every matched node")


# --- bench -----------------------------------------------------------------

class ParseError(GrafitoError):
    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class TooLargeError(GrafitoError):
    """Input exceeds what a brute-force reference can handle."""


class MissingReferenceError(GrafitoError):
    """Validation case points at a reference file that does not exist."""


# --- bindings / lifecycle ----------------------------------------------------

class ClientClosedError(GrafitoError):
    """Operation on a closed embedded client."""
