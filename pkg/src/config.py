"""
Project-wide settings for the Seiberg-Witten families calculator.
"""
import logging

# Output schema
SCHEMA_VERSION = "sw-family-calc/1"
SIGN_CONVENTION = "c(s_can) = -K"

# Logging
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DEFAULT_LOG_LEVEL = logging.WARNING

# Defaults for command line flags
DEFAULT_SEED = 0
DEFAULT_BOUND = 3
DEFAULT_WORD_LENGTH = 8
DEFAULT_JOBS = 1

# Fixed chart for E1 and E1(m,n): Z^{1,9} with basis h, e1, ..., e9
CHART = {
    'labels': ('h',) + tuple(f'e{i}' for i in range(1, 10)),
    'fiber': (3,) + (-1,) * 9,      # t' = 3h - e1 - ... - e9
    'omega': (1, 3),                # omega = h/3 as (numerator, denominator), so omega.t' = 1
}

# Rewrite rule priority of the families engine
RULE_PRIORITY = ("R0", "R3", "R4", "R1", "R2", "R5", "RC")
ALTERNATE_RULE_PRIORITY = ("R0", "R1", "R2", "R3", "R4", "R5", "RC")

RULE_DESCRIPTIONS = {
    'R0': 'identity: the product family is constant',
    'R1': 'S2xS2 collapse: SW^0_{X,s}(f' + "'" + ' # g) = SW^0(X\', s\') mod 2 when sgn+(g) = -1',
    'R2': 'blowup: SW^c_{X#CP2bar, s#k}(f # g) = SW^c_{X,s}(f)',
    'R3': 'composition: SW(f o g) = SW(f) + SW(g)',
    'R4': 'conjugation: SW_{X,s}(psi f psi^-1) = sgn+(psi) SW_{X,psi^-1 s}(f)',
    'R5': 'inverse: SW(f^-1) = -SW(f)',
    'RC': 'constant and zero chambers agree when both are defined',
    'FALLBACK': 'no rule applies',
}

# Grammar spellings of the manifold atoms
ATOM_NAMES = {
    'CP2': 'CP2',
    'CP2BAR': 'CP2bar',
    'S2xS2': 'S2xS2',
    'K3': 'K3',
    'E1': 'E1',
    'E1LOG': 'E1',
}

# Facts used as named rewrite steps and never re-derived
NAMED_FACTS = {
    'wall_stabilization': 'X # S2xS2 ~ X # CP2 # CP2bar for simply-connected non-spin X',
    'elliptic_dissolution': 'E1(m,n) # S2xS2 ~ 2CP2 # 10CP2bar',
    'mcg_surjective': 'M(X) -> Aut(H^2(X;Z)) is surjective for X = 2CP2 # 10CP2bar',
    'divisibility_orbits': 'Aut(L)-orbits of square-zero characteristics are classified by divisibility',
}
