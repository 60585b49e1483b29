//! Exact verification of plane-quartic constructions: polynomial arithmetic,
//! resultants, smoothness certificates, branch series and intersection
//! multiplicities. All arithmetic is over `Q`.

pub mod poly;
pub mod resultant;
pub mod series;
pub mod smooth;
pub mod sporadic;

pub use poly::{MultivariatePoly, PolyError};
pub use resultant::{resultant, resultant_with, ResultantError};
pub use series::{branch_series, tangent_contact_order, vanishing_order, SeriesError, TruncatedPowerSeries, VanishingOrder};
pub use smooth::{smoothness_certificate, SmoothError, SmoothnessCertificate};
pub use sporadic::{verify_fixture, verify_sporadic, Construction, Fixture, SporadicError, SporadicReport};
