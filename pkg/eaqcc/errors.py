class EaqccError(Exception):
    name = 'EAQCC_ERROR'

    def __init__(self, message=''):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.name}: {self.message}" if self.message else self.name


class ParseError(EaqccError):
    name = 'PARSE_ERROR'


class DependentRowsError(EaqccError):
    name = 'DEPENDENT_ROWS'


class FrameMismatchError(EaqccError):
    name = 'FRAME_MISMATCH'


class SingularMatrixError(EaqccError):
    name = 'SINGULAR_MATRIX'


class ExpansionLimitError(EaqccError):
    name = 'EXPANSION_LIMIT'


class CatastrophicInputError(EaqccError):
    name = 'CATASTROPHIC_INPUT'


class RankDeficiencyError(EaqccError):
    name = 'RANK_DEFICIENCY'


class GateError(EaqccError):
    name = 'BAD_GATE'


class ParameterError(EaqccError):
    name = 'PARAMETER_IDENTITY'


class RelationError(EaqccError):
    name = 'RELATION_CHECK'


class MalformedSplitError(EaqccError):
    name = 'MALFORMED_SPLIT'


class ChannelError(EaqccError):
    name = 'BAD_CHANNEL'
