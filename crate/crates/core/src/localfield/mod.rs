//! The completion F_q((T)) at T = 0: truncated Laurent series and the roots
//! of polynomials in F_q[T][x] there.

mod roots;
mod series;

pub use roots::{
    default_precision, eval_at_series, hensel_refine, profile_of_branches, root_branches,
    roots_in_laurent, split_profile, splits_completely, LaurentRoot, Reduction, RootBranch,
    SplitProfile,
};
pub(crate) use roots::splits_assuming_squarefree;
pub use series::TruncSeries;
