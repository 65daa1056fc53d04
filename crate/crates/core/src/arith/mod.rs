//! Exact arithmetic in `PSL(2, 𝒪)` for `𝒪 = ℤ[i]` and `𝒪 = ℤ[ω]`: element
//! enumeration, classification, cusp stabilizers and conjugacy classes.

pub mod axis;
pub mod cache;
pub mod centralizer;
pub mod classify;
pub mod cuspidal;
pub mod element;
pub mod enumerate;
pub mod group;
pub mod loxodromic;
pub mod nce;
pub mod quotient;
pub mod reduce;
pub mod ring;

pub use centralizer::{centralizer, Centralizer};
pub use classify::{classify, is_cuspidal, ElementClassification};
pub use cuspidal::{cuspidal_elliptic_classes, CuspidalEllipticClass};
pub use element::GroupElement;
pub use enumerate::enumerate_elements;
pub use group::{Group, StabilizerData};
pub use loxodromic::{complete_loxodromic_classes, loxodromic_candidates, non_cuspidal_elliptic_candidates, primitive_loxodromic_classes, LoxodromicClassReport, PrimitiveLoxodromicClass};
pub use nce::{non_cuspidal_elliptic_classes, NonCuspidalEllipticClass};
pub use quotient::Quotient;
pub use ring::{Ring, RingElement};
