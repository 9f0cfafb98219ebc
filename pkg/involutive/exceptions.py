"""
Errors raised by involutive complexes and the local map search
"""

from f2core.exceptions import BorderedFloerError


class UngradedComplexError(BorderedFloerError):
    """The local map search needs bidegrees to bound U-powers"""

    def __init__(self, message: str, complex_name: str = ''):
        self.complex_name = complex_name
        super().__init__(message, error_code='ungraded_complex', details={'complex': complex_name})


class IotaError(BorderedFloerError):
    def __init__(self, message: str, generator: str = None):
        self.generator = generator
        super().__init__(message, error_code='iota', details={'generator': generator})
