"""Pinned reference digits for the late-coefficient benchmark tables.

Each entry records printed significant digits as (sign, digit-string,
decimal exponent of the leading digit), e.g. 0.7688...e257 is
('+', '7688...', 257).  The verify-tables command and the acceptance suite
regenerate every cell and compare at exactly this many digits.

``dingle_error_sign_quirk`` marks the one cell whose recomputed error
matches all printed digits but with the opposite sign (the a_201 Dingle
error); the comparison for that cell is by magnitude.
"""

# (lambda, K) -> row: exact / approx to 40 digits, error to 3..19 digits,
# bound to 4..20 digits, for the degree-100 polynomial coefficient.
B100_CASES = {
    (8, 55): {
        "exact": ("+", "7688481106808590674525145642326792894187", 257),
        "approx": ("+", "7688481106808590674525145642326792893371", 257),
        "error": ("+", "816", 220),
        "bound": ("+", "1582", 221),
    },
    (10, 48): {
        "exact": ("+", "2328121261355049863437924678844708059197", 266),
        "approx": ("+", "2328121261355049863437924678847160113033", 266),
        "error": ("-", "2452053836", 236),
        "bound": ("+", "4965854763", 236),
    },
    (15, 35): {
        "exact": ("+", "1363711375012746147234623654087290250956", 282),
        "approx": ("+", "1363711375012746147228683544438226390236", 282),
        "error": ("+", "5940109649063860720", 261),
        "bound": ("+", "11702600900350747722", 262),
    },
}

# index 201 = 4*50+1, truncation K = 50
A201_CASE = {
    "n": 50,
    "K": 50,
    "branch": 1,
    "exact": ("-", "12659638780775052710147996185410566", 77),
    "inv_factorial": {
        "approx": ("-", "12659638780775052710147996185407205", 77),
        "error": ("-", "3361", 46),
        "bound": ("+", "12145", 47),
    },
    "zeta": {
        "approx": ("-", "12659638780775052710147996185414229", 77),
        "error": ("+", "3663", 46),
        "bound": ("+", "12145", 47),
    },
    "dingle": {
        "approx": ("-", "12659638780775052710147996185410717", 77),
        "error": ("-", "151", 45),
    },
    "dingle_error_sign_quirk": True,
}

# index 203 = 4*50+3, truncation K = 50
A203_CASE = {
    "n": 50,
    "K": 50,
    "branch": 3,
    "exact": ("-", "20462395914727659153115140698806033", 78),
    "inv_factorial": {
        "approx": ("-", "20462395914727659153115140698802838", 78),
        "error": ("-", "3194", 47),
        "bound": ("+", "9761", 47),
    },
    "zeta": {
        "approx": ("-", "20462395914727659153115140698808575", 78),
        "error": ("+", "2542", 47),
        "bound": ("+", "9761", 47),
    },
    "dingle": {
        "approx": ("-", "20462395914727659153115140698805707", 78),
        "error": ("-", "326", 46),
    },
    "dingle_error_sign_quirk": False,
}
