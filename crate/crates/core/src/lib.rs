//! Local indices of polynomial vector fields and radial indices of 1-forms.

pub mod polyalg;
pub mod localdeg;
pub mod numdeg;
pub mod constructions;
pub mod radial;
pub mod branches;
