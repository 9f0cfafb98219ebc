"""
Errors raised by type-D/type-A structures and their pairings
"""

from typing import Dict, List, Optional

from f2core.exceptions import BorderedFloerError


class StructureValidationError(BorderedFloerError):
    """Undeclared generator, idempotent clash, or failed structure relation"""

    def __init__(self, message: str, generator: str = None, path: Optional[List[str]] = None,
                 details: Optional[Dict] = None):
        self.generator = generator
        self.path = path or []
        details = dict(details or {})
        if generator is not None:
            details['generator'] = generator
        if self.path:
            details['path'] = self.path
        super().__init__(message, error_code='structure_validation', details=details)


class UnboundedPairingError(BorderedFloerError):
    def __init__(self, message: str, cycle: List[str], depth: int):
        self.cycle = cycle
        self.depth = depth
        super().__init__(message, error_code='unbounded_pairing', details={'cycle': cycle, 'depth': depth})


class ChainMapError(BorderedFloerError):
    def __init__(self, message: str, generator: str):
        self.generator = generator
        super().__init__(message, error_code='not_a_chain_map', details={'generator': generator})


class ConversionError(BorderedFloerError):
    def __init__(self, message: str, generator: str = None):
        self.generator = generator
        super().__init__(message, error_code='conversion', details={'generator': generator})
