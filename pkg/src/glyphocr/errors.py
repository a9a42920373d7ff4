"""Exception types shared across the package.

``ParseError`` covers defects in input files (images, stores, manifests);
everything else raised by the library is a plain ``ValueError`` signalling
a violated precondition. The CLI maps the two groups to distinct exit
codes.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Input data does not conform to its declared format."""
