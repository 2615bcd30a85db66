//! Classical skin-lesion analysis: color-model segmentation and diagnosis.
//!
//! The segmentation path models lesion and skin colors with Gaussian
//! mixtures fitted by EM, turns them into per-pixel lesion posteriors via
//! Bayes' rule, sweeps candidate thresholds over the posterior map, and
//! picks the threshold whose cleaned mask an SVR predicts to overlap the
//! truth best. The diagnosis path computes a 200-dimension hand-crafted
//! descriptor from the image and its lesion mask and feeds it to a
//! one-vs-rest kernel SVM with Platt-calibrated scores.
//!
//! All numeric entry points are deterministic for a fixed seed; heavy
//! per-pixel loops parallelize internally with order-stable reductions so
//! results do not depend on the thread count.

pub mod bayes;
pub mod error;
pub mod eval;
pub mod features;
pub mod gmm;
pub mod labels;
pub mod morphology;
pub mod raster;
pub mod svm;
pub mod synth;
pub mod threshold;

pub use error::Error;
pub use labels::Label;
pub use raster::{BinaryMask, RgbImage, ScalarMap};
