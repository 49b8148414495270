//! Exact construction, reconstruction and certification of hyperelliptic
//! limit cycles of polynomial Liénard systems `x' = y, y' = -f(x) y - g(x)`.

pub mod cli;
pub mod families;
pub mod lienard;
pub mod polyx;
pub mod recover;
pub mod rootclass;
