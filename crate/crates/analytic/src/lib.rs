pub mod chi;
pub mod exact;
pub mod lovas;
pub mod quadrature;
pub mod hyper;
pub mod poly;
pub mod rational;
pub mod special;
pub mod volumes;
