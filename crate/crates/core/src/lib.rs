//! Computations around the eta-periodic motivic stable stems.

pub mod abelian;
pub mod bigint_serde;
pub mod graded;
pub mod kwcalc;
pub mod linalg;
pub mod steenrod;
pub mod witt;
