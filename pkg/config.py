"""
Weyl Lab Configuration
Precision budgets, search bounds and demo defaults for the tree experiments.
"""
import os


class Config:
    # --- Tool ---
    TOOL_NAME = "weyl-lab"
    VERSION = "1.0.0"
    SCHEMA_VERSION = 1               # Bump when the JSON report layout changes

    # --- p-adic precision ---
    DEFAULT_PRECISION = 20           # Significant digits for embeddings
    VERTEX_PRECISION = 64            # Digits used to embed lattice bases (effectively exact)
    TREE_GUARD_SLACK = 2             # Acting on ball(r) needs r + 2 digits beyond the deepest denominator

    # --- Density approximation of G in G_p and T in T_p ---
    APPROX_MARGIN = 4                # Extra digits on top of 2 * max |valuation|
    APPROX_MAX_ATTEMPTS = 5          # Margin doubles on every failed certification

    # --- Searches ---
    WITNESS_HEIGHT = 50              # Pure quaternion j with j^2 = -1
    NORMALIZE_MAX_HEIGHT = 50        # lambda, mu search when alpha is not a p-adic square

    # --- Stabilizer generators ---
    GENERATOR_DEPTH = None           # None -> topological generators U(1), L(p), diag(u, 1/u)
    ORBIT_WORKERS = int(os.getenv("WEYL_LAB_ORBIT_WORKERS", "1"))  # >1 uses a process pool

    # --- Non-standard apartment demo (A, B over Q_3) ---
    DEMO_A = "0,-1;1,7/3"
    DEMO_B = "2,3;-5/3,-2"
    DEMO_PRIME = 3
    DEMO_RADIUS = 6
    DEMO_CHECK_DIGITS = 6            # gAg^-1 must be diagonal mod p^6
    DEMO_ROOT_SELECTOR = 1           # sqrt(13) = 1 mod 3
    DEMO_PRECISION = 40

    # --- Dichotomy table ---
    DICHOTOMY_RADIUS = 4
    DICHOTOMY_MAXLEN = 2

    # --- System ---
    LOG_LEVEL = os.getenv("WEYL_LAB_LOG_LEVEL", "WARNING")
    LOG_FILE = os.getenv("WEYL_LAB_LOG_FILE")  # Optional mirror of the stderr log

config = Config()
