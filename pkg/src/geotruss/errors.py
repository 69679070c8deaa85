"""Exception hierarchy shared by every module."""


class GeoTrussError(Exception):
    """Base class for all library errors."""


class EmptyGroup(GeoTrussError):
    pass


class ParseError(GeoTrussError):
    def __init__(self, path, line, reason):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


class DanglingEdge(GeoTrussError):
    def __init__(self, external_id, line=None):
        self.external_id = external_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"edge references unknown vertex {external_id!r}{where}")


class DuplicateVertex(GeoTrussError):
    def __init__(self, external_id):
        self.external_id = external_id
        super().__init__(f"duplicate vertex id {external_id!r}")


class UnknownKeyword(GeoTrussError):
    def __init__(self, keyword):
        self.keyword = keyword
        super().__init__(f"keyword {keyword!r} does not occur in the graph")


class InvalidParameter(GeoTrussError):
    def __init__(self, name, value, reason=""):
        self.name = name
        self.value = value
        msg = f"invalid value for {name}: {value!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class VertexAbsent(GeoTrussError):
    pass


class EdgeAbsent(GeoTrussError):
    pass


class NonMonotoneRadius(GeoTrussError):
    pass


class DoubleInsert(GeoTrussError):
    pass


class NotInserted(GeoTrussError):
    pass


class InvalidCandidate(GeoTrussError):
    pass


class InstanceTooLarge(GeoTrussError):
    pass
