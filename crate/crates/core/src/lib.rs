pub mod algebra;
pub mod coeff;
pub mod envelope;
pub mod linalg;
pub mod shapovalov;
pub mod singular;
pub mod verma;
