"""엔진의 예외 계층

의도적으로 발생시키는 모든 오류는 ResLabError를 상속하며,
CLI는 InputError 하위 클래스를 종료 코드 2로 처리함
"""


class ResLabError(Exception):
    pass


class InputError(ResLabError):
    """입력 자체의 오류 (스키마, 임베딩, 매개변수)"""


class GraphSchemaError(InputError):
    pass


class ConfigError(InputError):
    pass


class BadRotation(InputError):
    pass


class NotBipartite(InputError):
    pass


class NonPlanarEmbedding(InputError):
    pass


class BadParameter(InputError):
    pass


class InvalidChainSpec(InputError):
    pass


class NotATree(InputError):
    pass


class NotACycle(ResLabError):
    pass


class NoPerfectMatching(ResLabError):
    pass


class NotElementary(ResLabError):
    pass


class NotWeaklyElementary(ResLabError):
    pass


class NotUnique(ResLabError):
    pass


class SizeLimitExceeded(ResLabError):
    def __init__(self, what: str, size: int, guard: int, env_var: str):
        super().__init__(f"{what} has size {size}, above the guard {guard} (override with {env_var})")
        self.size = size
        self.guard = guard
        self.env_var = env_var


class Disconnected(ResLabError):
    pass


class NotPartialCube(ResLabError):
    pass


class NotResonant(ResLabError):
    pass


class NotAHypercube(ResLabError):
    pass


class NotP2C(ResLabError):
    pass


class PreconditionFailed(ResLabError):
    pass


class ClassMismatch(ResLabError):
    pass
