//! Complex gamma, digamma and the Gauss hypergeometric function.

mod gamma;
mod hyp2f1;

pub use gamma::{digamma, gamma, is_nonpositive_integer, rgamma};
pub use hyp2f1::{
    hyp2f1, hyp2f1_near_one, hyp2f1_near_one_w, hyp2f1_series, hyp2f1_series_with, hyp2f1_w,
    Hyp2F1Class, Hyp2F1Params, SeriesConfig, INTEGER_TOL,
};
