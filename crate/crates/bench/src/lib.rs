//! Shared fixtures for the criterion benchmarks in `benches/`.

use splitequiv::equivalence::{hat, KernelModule};
use splitequiv::functors::{seeded_family, AdditiveFunctor, PointedFunctor};
use splitequiv::structure::{MRStructure, Setting};

/// A kernel module together with a seeded family of functors and their
/// transports.
pub struct Fixture {
    pub km: KernelModule,
    pub pointed: Vec<PointedFunctor>,
    pub additive: Vec<AdditiveFunctor>,
}

pub fn fixture(s: MRStructure, count: usize, seed: u64, max_dim: usize) -> Fixture {
    let km = KernelModule::build(Setting::analyze(s).expect("valid structure")).expect("factorizations exist");
    let pointed = seeded_family(km.d(), count, seed, max_dim);
    let additive = pointed.iter().map(|f| hat(&km, f).expect("transport")).collect();
    Fixture { km, pointed, additive }
}
