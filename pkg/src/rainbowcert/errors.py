"""Exception hierarchy shared by every module of the package."""


class CertError(Exception):
    """Base class; the CLI maps subclasses of ``InputError`` to exit code 3."""


class InputError(CertError):
    pass


class NonPositiveGenerator(InputError):
    pass


class GeneratorOutOfRange(InputError):
    pass


class NotAKnot(InputError):
    def __init__(self, components, message=None):
        self.components = components
        super().__init__(message or f"closure has {components} components, not a knot")


class OddParityViolation(InputError):
    pass


class ParseError(InputError):
    pass


class EulerViolation(InputError):
    pass


class MultiComponent(InputError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"diagram traces {components} components")


class UnlabeledUnboundedFace(InputError):
    pass


class InconsistentWinding(CertError):
    pass


class UnknownCrossing(InputError):
    pass


class TbMinusOne(CertError):
    """Rational grading is undefined when tb = -1."""


class NotBraidClosure(CertError):
    pass


class LayoutFailure(CertError):
    pass


class Infeasible(CertError):
    def __init__(self, certificate, message="area constraints are infeasible"):
        self.certificate = certificate
        super().__init__(message)


class UnboundedRequest(CertError):
    pass


class BudgetExceeded(CertError):
    pass


class NoRsftDisk(CertError):
    pass
