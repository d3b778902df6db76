pub mod bigcell;
pub mod classical_oracle;
pub mod coeff;
pub mod grassmannian;
pub mod manin;
pub mod parabolic;
pub mod report;
pub mod rewrite;
pub mod superfree;
