"""
Engine exception hierarchy shared by every app
"""

from typing import Dict, Optional


class BorderedFloerError(Exception):
    """Base error carrying a machine-readable code and details"""

    def __init__(self, message: str, error_code: str = None, details: Optional[Dict] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict:
        return {
            'error': self.message,
            'error_code': self.error_code,
            'details': self.details,
        }


class StructuralIntegrityError(BorderedFloerError):
    """Differential does not square to zero, or an internal consistency check failed"""

    def __init__(self, message: str, generator: str = None, details: Optional[Dict] = None):
        self.generator = generator
        details = dict(details or {})
        if generator is not None:
            details['generator'] = generator
        super().__init__(message, error_code='structural_integrity', details=details)


class CoefficientOverflowError(BorderedFloerError):
    def __init__(self, message: str, cap: int = None):
        self.cap = cap
        super().__init__(message, error_code='coefficient_overflow', details={'cap': cap})
