use thiserror::Error;

/// Hypotheses checked by the bound pipelines before any constant is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    /// No quotient of two distinct roots is constant.
    Nondegeneracy,
    /// No root is constant.
    RootsNonconstant,
    /// Every pair of roots is multiplicatively independent.
    MultIndependence,
}

impl Hypothesis {
    /// Machine-readable name used in CLI error objects.
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::Nondegeneracy => "nondegeneracy",
            Hypothesis::RootsNonconstant => "roots_nonconstant",
            Hypothesis::MultIndependence => "mult_independence",
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd undefined: both inputs are zero")]
    GcdUndefined,
    #[error("zero polynomial has no squarefree part")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("exponent at position {position} must be a nonnegative integer literal")]
    BadExponent { position: usize },
    #[error("order too small: a recurrence needs at least two terms, got {0}")]
    OrderTooSmall(usize),
    #[error("coefficient and root lists differ in length ({coefficients} vs {roots})")]
    LengthMismatch { coefficients: usize, roots: usize },
    #[error("degenerate datum: {0}")]
    DegenerateDatum(String),
    #[error("roots not distinct: roots {0} and {1} coincide")]
    RootsNotDistinct(usize, usize),
    #[error("indices must be strictly decreasing")]
    IndicesNotDecreasing,
    #[error("empty index list")]
    EmptyIndices,
    #[error("window lower end {lo} exceeds upper end {hi}")]
    EmptyWindow { lo: u64, hi: u64 },
    #[error("single-term bound hypothesis violated: {0}")]
    SingleHypothesis(Hypothesis),
    #[error("pair-sum bound hypothesis violated: {0}")]
    PairHypothesis(Hypothesis),
    #[error("lattice gap hypothesis violated: both inputs must be nonconstant")]
    ConstantLatticeInput,
    #[error("multiplicatively dependent inputs")]
    MultiplicativelyDependent,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// The violated theorem hypothesis, if this error reports one.
    pub fn hypothesis(&self) -> Option<Hypothesis> {
        match self {
            Error::SingleHypothesis(h) | Error::PairHypothesis(h) => Some(*h),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
