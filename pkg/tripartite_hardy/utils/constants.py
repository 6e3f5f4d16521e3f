InternalErrorMessage = "Error occured during computation. This indicates a numerical inconsistency."
parseErrorMessage = "Could not parse input file."
dimensionMismatchErrorMessage = "Dimensions of the inputs do not match."
indexOutOfRangeErrorMessage = "Amplitude index outside the declared dimensions."
zeroStateErrorMessage = "State has no nonzero amplitude."
notUnitaryErrorMessage = "Basis change matrix is not unitary."
badArityErrorMessage = "A Hardy-type test needs at least two parties."
notMagicBasisErrorMessage = "State is not expressed in a magic basis."
notFullyEntangledErrorMessage = "State is not fully entangled."
notEntangledErrorMessage = "State is not entangled."
constructionFailedErrorMessage = "No measurement settings passing the test were found."
zeroRayErrorMessage = "A measurement ray has vanishing norm."
degenerateQuadraticErrorMessage = "Settings quadratic vanishes identically."
magicResidualErrorMessage = "Closest product state is not accurate enough for a magic basis."
malformedEnvironmentErrorMessage = "Malformed environment variables."
proportionalityAmbiguousErrorMessage = "Proportionality test is too close to its boundary."
lpNumericalFailureErrorMessage = "Simplex pivot limit exceeded."

errorTypes = {
    "INTERNAL_ERROR": "INTERNAL_ERROR",
    "PARSE_ERROR": "PARSE_ERROR",
    "MALFORMED_ENVIRONMENT": "MALFORMED_ENVIRONMENT",
    "DIMENSION_MISMATCH": "DIMENSION_MISMATCH",
    "INDEX_OUT_OF_RANGE": "INDEX_OUT_OF_RANGE",
    "ZERO_STATE": "ZERO_STATE",
    "NOT_UNITARY": "NOT_UNITARY",
    "BAD_ARITY": "BAD_ARITY",
    "NOT_MAGIC_BASIS": "NOT_MAGIC_BASIS",
    "NOT_FULLY_ENTANGLED": "NOT_FULLY_ENTANGLED",
    "NOT_ENTANGLED": "NOT_ENTANGLED",
    "CONSTRUCTION_FAILED": "CONSTRUCTION_FAILED",
    "ZERO_RAY": "ZERO_RAY",
    "DEGENERATE_QUADRATIC": "DEGENERATE_QUADRATIC",
    "MAGIC_RESIDUAL_TOO_LARGE": "MAGIC_RESIDUAL_TOO_LARGE",
    "PROPORTIONALITY_AMBIGUOUS": "PROPORTIONALITY_AMBIGUOUS",
    "LP_NUMERICAL_FAILURE": "LP_NUMERICAL_FAILURE",
}

exitCodes = {
    "SUCCESS": 0,
    "INPUT_ERROR": 1,
    "CONSTRUCTION_FAILED": 2,
    "NOT_FULLY_ENTANGLED": 3,
}

# Numerical thresholds shared across services
NORMALIZATION_TOL = 1e-12
PROBABILITY_CLAMP = 1e-12
UNITARY_TOL = 1e-10
MAGIC_RESIDUAL_MAX = 1e-9
MAGIC_RESIDUAL_TARGET = 1e-12
RANK_TOL = 1e-10
ZERO_RAY_NORM = 1e-12
DET_C_MIN = 1e-8
QUADRATIC_ZERO = 1e-13
CLASSIFY_TOL = 1e-9
PROPORTIONAL_OVERLAP = 1 - 1e-10
PIVOT_TOL = 1e-11
