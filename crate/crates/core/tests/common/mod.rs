#![allow(dead_code)]

use breakage::kinetics::{CollisionKernel, FragmentDistribution, WeightSequence};
use breakage::system::{System, SystemConfig};

pub fn kernels() -> Vec<CollisionKernel<f64>> {
    vec![
        CollisionKernel::constant(1.0).unwrap(),
        CollisionKernel::product_power(0.5).unwrap(),
        CollisionKernel::product_power(1.0).unwrap(),
        CollisionKernel::product_power(2.0).unwrap(),
        CollisionKernel::lambda_product(WeightSequence::power(1.0, 1.5).unwrap()),
    ]
}

pub fn fragments() -> Vec<FragmentDistribution<f64>> {
    let mut v = vec![FragmentDistribution::uniform(), FragmentDistribution::monomer(), FragmentDistribution::exponential()];
    for nu in [-3.0, -1.5, -1.0, 0.0, 1.0, 2.0] {
        v.push(FragmentDistribution::power_law(nu).unwrap());
    }
    v
}

pub fn system(p: usize, kernel: CollisionKernel<f64>, phi: FragmentDistribution<f64>) -> System<f64> {
    System::new(SystemConfig::new(p, kernel, phi)).unwrap()
}

pub fn fig5(phi: FragmentDistribution<f64>) -> System<f64> {
    system(40, CollisionKernel::product_power(2.0).unwrap(), phi)
}
