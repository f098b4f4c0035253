# ringlab/ring_spec.py
"""
Ring-spec DSL, read left to right:

    spec := z:<n> | gf:<p>:<n> | null:<n> | uni:<spec>
          | mat:<spec>:<k> | tri:<spec>:<k>
          | prod:<spec>,<spec> | table:<path>

`table:<path>` consumes the rest of the string up to the next ',' so it can
only be nested as the first factor of a product.
"""
import re
import logging
from typing import List

from ringlab.errors import RingLabError, SpecParseError
from ringlab.finite_ring import (
    Ring, direct_product, galois_field, matrix_ring, null_ring, table_ring_from_file, z_mod
)
from ringlab.models import MatrixShape

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"[:,]|[^:,]+")
FORMS = ("z", "gf", "null", "uni", "mat", "tri", "prod", "table")


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[str] = _TOKEN.findall(text.strip())
        self.pos = 0

    def fail(self, message: str) -> SpecParseError:
        return SpecParseError(f"{message} in ring spec {self.text!r} (token {self.pos})")

    def next(self) -> str:
        if self.pos >= len(self.tokens):
            raise self.fail("Unexpected end")
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, separator: str):
        token = self.next()
        if token != separator:
            raise self.fail(f"Expected {separator!r}, got {token!r}")

    def integer(self, what: str) -> int:
        token = self.next()
        try:
            return int(token)
        except ValueError:
            raise self.fail(f"Expected integer {what}, got {token!r}")

    def parse(self) -> Ring:
        ring = self.spec()
        if self.pos != len(self.tokens):
            raise self.fail("Trailing input")
        return ring

    def spec(self) -> Ring:
        head = self.next()
        if head not in FORMS:
            raise self.fail(f"Unknown ring form {head!r}")
        self.expect(":")

        if head == "z":
            return z_mod(self.integer("n"))
        if head == "null":
            return null_ring(self.integer("n"))
        if head == "gf":
            p = self.integer("p")
            self.expect(":")
            return galois_field(p, self.integer("n"))
        if head in ("mat", "tri"):
            base = self.spec()
            self.expect(":")
            k = self.integer("k")
            shape = MatrixShape.FULL if head == "mat" else MatrixShape.UPPER_TRIANGULAR
            return matrix_ring(base, k, shape)
        if head == "prod":
            left = self.spec()
            self.expect(",")
            return direct_product(left, self.spec())
        if head == "uni":
            from ringlab.semidirect import unitalization
            return unitalization(self.spec())

        # table
        parts: List[str] = []
        while self.pos < len(self.tokens) and self.tokens[self.pos] != ",":
            parts.append(self.next())
        path = "".join(parts)
        if not path:
            raise self.fail("Missing table path")
        return table_ring_from_file(path)


def parse_ring_spec(text: str) -> Ring:
    """Build the ring named by a spec string"""
    if not text or not text.strip():
        raise SpecParseError("Empty ring spec")
    try:
        ring = _SpecParser(text).parse()
    except RingLabError:
        raise
    except (OSError, ValueError) as e:
        raise SpecParseError(f"Could not build ring from {text!r}: {e}") from e
    logger.info(f"Parsed {text!r} as {ring.descriptor} (order {ring.order})")
    return ring
