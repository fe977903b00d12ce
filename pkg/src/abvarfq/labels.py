"""Isogeny class labels: "g.q.code1_code2_..._codeg".

Each code is a base-26 numeral with digits a=0 .. z=25.  Nonnegative n is
written without leading 'a' digits (except "a" itself for 0); negative n is
the literal letter 'a' followed by the code of |n|.  So -1 -> "ab",
43 -> "br", -83 -> "adf".
"""

from __future__ import annotations

from .weil import WeilPoly, prime_power


class LabelError(ValueError):
    """Malformed label text; carries the offending position."""

    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"bad label {text!r} at position {pos}: {reason}")
        self.text = text
        self.pos = pos
        self.reason = reason


def encode_int(n: int) -> str:
    if n < 0:
        return "a" + encode_int(-n)
    if n == 0:
        return "a"
    digits = []
    while n:
        n, r = divmod(n, 26)
        digits.append(chr(ord("a") + r))
    return "".join(reversed(digits))


def decode_int(code: str, text: str = "", offset: int = 0) -> int:
    if not code:
        raise LabelError(text or code, offset, "empty coefficient code")
    neg = False
    if code[0] == "a" and len(code) > 1:
        neg = True
        code = code[1:]
        offset += 1
    n = 0
    for i, ch in enumerate(code):
        if not ("a" <= ch <= "z"):
            raise LabelError(text or code, offset + i, f"invalid digit {ch!r}")
        n = n * 26 + (ord(ch) - ord("a"))
    if len(code) > 1 and code[0] == "a":
        raise LabelError(text or code, offset, "leading zero digit")
    if neg and n == 0:
        raise LabelError(text or code, offset - 1, "negative zero")
    return -n if neg else n


def encode_label(g: int, q: int, a_coeffs) -> str:
    a_coeffs = list(a_coeffs)
    if len(a_coeffs) != g:
        raise ValueError(f"need {g} coefficients, got {len(a_coeffs)}")
    return f"{g}.{q}." + "_".join(encode_int(a) for a in a_coeffs)


def decode_label(text: str) -> tuple[int, int, list[int]]:
    parts = text.split(".")
    if len(parts) != 3:
        raise LabelError(text, 0, "expected g.q.codes")
    try:
        g = int(parts[0])
        q = int(parts[1])
    except ValueError:
        raise LabelError(text, 0, "g and q must be integers") from None
    if g < 1:
        raise LabelError(text, 0, "g must be positive")
    prime_power(q)  # raises on invalid q
    codes = parts[2].split("_")
    if len(codes) != g:
        raise LabelError(text, len(parts[0]) + len(parts[1]) + 2,
                         f"expected {g} coefficient codes, got {len(codes)}")
    offset = len(parts[0]) + len(parts[1]) + 2
    out = []
    for code in codes:
        out.append(decode_int(code, text, offset))
        offset += len(code) + 1
    return g, q, out


def label_of(P: WeilPoly) -> str:
    return encode_label(P.g, P.q, P.a_coeffs)


def poly_of(text: str) -> WeilPoly:
    g, q, a = decode_label(text)
    return WeilPoly.from_a(g, q, a)
