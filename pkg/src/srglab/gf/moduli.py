"""Default moduli for the fields used by the graph families.

Coefficients are listed low-to-high and include the leading 1.

| Field  | Modulus            |
|--------|--------------------|
| GF(4)  | x^2 + x + 1        |
| GF(8)  | x^3 + x + 1        |
| GF(9)  | x^2 + 1            |
| GF(16) | x^4 + x + 1        |
| GF(25) | x^2 + 2            |
| GF(49) | x^2 + 1            |
| GF(64) | x^6 + x + 1        |

Prime fields use the modulus x, so elements are the constants 0..p-1.
"""

DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
}


def format_modulus(modulus: tuple[int, ...]) -> str:
    """Render a low-to-high coefficient tuple as a polynomial in x."""
    terms = []
    for power in range(len(modulus) - 1, -1, -1):
        c = modulus[power]
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        else:
            mono = "x" if power == 1 else f"x^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"
