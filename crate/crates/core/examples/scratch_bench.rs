use std::time::Instant;

use gent_core::bound::{global_lower_bound, partition_lower_bound, AMatrixSet, BoundOptions};
use gent_core::linalg::{singular_values, C64, CMatrix, DensityMatrix, Dims};
use gent_core::partitions::enumerate_bipartitions;
use gent_core::pure::global_entanglement;
use gent_core::zoo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts(restarts: usize, seed: u64) -> BoundOptions {
    BoundOptions {
        restarts,
        seed,
        max_iters: 2000,
        tol: 1e-7,
    }
}

// Restricted objective: z^p_beta = y^p_beta * exp(i phi_beta) with y >= 0 and
// the phase shared across partitions. Only for 3-qubit states where every
// partition carries exactly 6 components.
fn restricted_objective(aset: &AMatrixSet, y: &[f64], phi: &[f64]) -> f64 {
    let k = aset.rank();
    let mut acc = vec![C64::new(0.0, 0.0); k * k];
    for (flat, m) in aset.matrices().iter().enumerate() {
        let p = flat / 6;
        let beta = flat % 6;
        let z = C64::from_polar(y[p * 6 + beta].abs(), phi[beta]);
        for (a, &v) in acc.iter_mut().zip(m.as_slice()) {
            *a += v * z;
        }
    }
    let combined = CMatrix::from_vec(k, k, acc);
    let sv = singular_values(&combined).unwrap();
    sv[0] - sv.iter().skip(1).sum::<f64>()
}

fn restricted_maximize(aset: &AMatrixSet, restarts: usize, seed: u64) -> f64 {
    let dim_y = 18;
    let dim_phi = 6;
    let mut best = f64::NEG_INFINITY;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut y: Vec<f64> = (0..dim_y).map(|_| rng.random::<f64>()).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        let mut phi: Vec<f64> = (0..dim_phi)
            .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
            .collect();
        let eval = |y: &[f64], phi: &[f64]| {
            let mut yn = y.to_vec();
            let n = yn.iter().map(|v| v * v).sum::<f64>().sqrt();
            yn.iter_mut().for_each(|v| *v /= n);
            restricted_objective(aset, &yn, phi)
        };
        let mut fx = eval(&y, &phi);
        let mut step = 0.2;
        for _ in 0..4000 {
            let h = 1e-6;
            let mut gy = vec![0.0; dim_y];
            let mut gphi = vec![0.0; dim_phi];
            for i in 0..dim_y {
                let mut yp = y.clone();
                yp[i] += h;
                let fp = eval(&yp, &phi);
                yp[i] -= 2.0 * h;
                let fm = eval(&yp, &phi);
                gy[i] = (fp - fm) / (2.0 * h);
            }
            for i in 0..dim_phi {
                let mut pp = phi.clone();
                pp[i] += h;
                let fp = eval(&y, &pp);
                pp[i] -= 2.0 * h;
                let fm = eval(&y, &pp);
                gphi[i] = (fp - fm) / (2.0 * h);
            }
            let mut improved = false;
            while step >= 1e-12 {
                let cy: Vec<f64> = y.iter().zip(&gy).map(|(a, g)| a + step * g).collect();
                let cphi: Vec<f64> = phi.iter().zip(&gphi).map(|(a, g)| a + step * g).collect();
                let fc = eval(&cy, &cphi);
                if fc > fx {
                    let gain = fc - fx;
                    y = cy;
                    phi = cphi;
                    fx = fc;
                    step = (step * 2.0).min(0.5);
                    improved = gain >= 1e-9;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if fx > best {
            best = fx;
        }
    }
    best
}

fn main() {
    // 1. seed stability of the free-phase bound
    for (name, rho) in [
        ("UPB", zoo::upb_shifts()),
        ("DCT", zoo::dct(zoo::DCT_PRESET).unwrap()),
    ] {
        print!("{name} free-z by seed (32 restarts): ");
        for seed in 0..5u64 {
            let r = global_lower_bound(&rho, &opts(32, seed)).unwrap();
            print!("{:.5} ", r.value);
        }
        let r = global_lower_bound(&rho, &opts(128, 0)).unwrap();
        println!("| 128 restarts: {:.5}", r.value);
    }

    // 2. per-partition bounds
    for (name, rho) in [
        ("UPB", zoo::upb_shifts()),
        ("DCT", zoo::dct(zoo::DCT_PRESET).unwrap()),
    ] {
        print!("{name} single-partition bounds: ");
        for part in enumerate_bipartitions(rho.dims()).unwrap() {
            let r = partition_lower_bound(&rho, &part, &opts(16, 0)).unwrap();
            print!("{} -> {:.5}  ", part.label(), r.value);
        }
        println!();
    }

    // 3. restricted shared-phase optimization (paper-style parametrization?)
    for (name, rho) in [
        ("UPB", zoo::upb_shifts()),
        ("DCT", zoo::dct(zoo::DCT_PRESET).unwrap()),
    ] {
        let aset = AMatrixSet::build(&rho).unwrap();
        let t = Instant::now();
        let best = restricted_maximize(&aset, 64, 0);
        println!(
            "{name} shared-phase restricted optimum (64 restarts): {:.5} ({:?})",
            best,
            t.elapsed()
        );
    }

    // 4. bound validity on explicit 3-qubit ensembles
    let dims = Dims::qubits(3).unwrap();
    let mut worst = f64::INFINITY;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let m = 2 + (seed as usize % 3);
        let states: Vec<_> = (0..m)
            .map(|i| zoo::haar_random_pure(&dims, 9000 + seed * 10 + i as u64))
            .collect();
        let mut weights: Vec<f64> = (0..m).map(|_| rng.random::<f64>() + 0.05).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut entries = CMatrix::zeros(8, 8);
        let mut average = 0.0;
        for (w, psi) in weights.iter().zip(&states) {
            entries += psi.to_density().entries() * C64::new(*w, 0.0);
            average += w * global_entanglement(psi).unwrap().value();
        }
        let rho = DensityMatrix::new(dims.clone(), entries).unwrap();
        let bound = global_lower_bound(&rho, &opts(16, 0)).unwrap();
        worst = worst.min(average - bound.value);
    }
    println!("ensemble slack min over 20 trials (must be >= -1e-6): {worst:.6}");
}
