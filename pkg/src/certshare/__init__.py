"""Secret sharing with certified deletion.

Subpackages cover exact finite-field arithmetic (gf), monotone access
structures (access), classical secret sharing (css), a two-tier quantum
simulator (qsim), the deletable 2-of-2 scheme (bk2of2), the no-signaling
compiler (nscd), the adaptive threshold scheme (acd), the seedless-extractor
verifier (extractor), and the experiment harness (strategies, stats,
serialize, experiments, cli).
"""

__version__ = "0.1.0"
