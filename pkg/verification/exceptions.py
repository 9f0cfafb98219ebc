"""
Errors raised while reading module files
"""

from typing import Optional

from f2core.exceptions import BorderedFloerError


class FormatError(BorderedFloerError):
    """A syntax or semantic error at a position in a module file"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 source: str = ''):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(message, error_code='format', details={'line': line, 'column': column, 'source': source})

    def __str__(self) -> str:
        where = self.source or '<text>'
        if self.line is not None:
            where += f':{self.line}'
            if self.column is not None:
                where += f':{self.column}'
        return f'{where}: {self.message}'
