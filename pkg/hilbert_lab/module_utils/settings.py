"""Numeric defaults shared by the library and the command modules."""
import numpy as np

EPS = np.finfo(float).eps

# boundary representation
CONVEXITY_SAMPLES = 4096
RAY_SCAN_SAMPLES = 8
ROOT_RTOL = 4 * EPS
ROOT_XTOL_SCALE = 1e-15
RAY_RESIDUAL_TOL = 1e-10

# metric evaluation
NEAR_BOUNDARY_FLOOR = 1e-6
TANGENCY_FLOOR = 1e-12
QUADRATURE_EPSABS = 1e-11
QUADRATURE_EPSREL = 1e-10

# connection
ZERO_ACCEL = 1e-12
NORMAL_XTOL = 1e-14

# spheres and fits
DEFAULT_R_MIN = 1.0
DEFAULT_R_MAX = 5.0
DEFAULT_STEPS = 9
FIT_WINDOW = (2.0, 5.0)
FIT_MIN_POINTS = 4
FIT_NOISE_FLOOR = 1e-13
EXPANSION_X2 = (1e-2, 1e-3, 1e-4)
EXPANSION_SAFE_MAX = 0.1

# verification suite
DEFAULT_SEED = 42
OKADA_SAMPLES = 1000
TENSOR_SAMPLES = 100
INVARIANCE_PAIRS = 100
UNIFORMITY_ANGLES = 16
SECTION_DIRECTIONS = 8
SPHERE_RADII = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
