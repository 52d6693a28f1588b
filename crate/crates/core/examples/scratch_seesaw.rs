use std::time::Instant;

use gent_core::bound::AMatrixSet;
use gent_core::linalg::{C64, CMatrix};
use gent_core::zoo;
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn combined(aset: &AMatrixSet, z: &[C64]) -> CMatrix {
    let k = aset.rank();
    let mut acc = vec![C64::new(0.0, 0.0); k * k];
    for (m, &zi) in aset.matrices().iter().zip(z) {
        for (a, &v) in acc.iter_mut().zip(m.as_slice()) {
            *a += v * zi;
        }
    }
    CMatrix::from_vec(k, k, acc)
}

fn objective_and_svd(aset: &AMatrixSet, z: &[C64]) -> (f64, CMatrix, CMatrix, DVector<f64>) {
    let m = combined(aset, z);
    let svd = m.svd(true, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let k = aset.rank();
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let u_sorted = CMatrix::from_fn(k, k, |i, c| u[(i, order[c])]);
    let v_sorted = CMatrix::from_fn(k, k, |i, c| vt[(order[c], i)].conj());
    let s_sorted = DVector::from_fn(k, |i, _| svd.singular_values[order[i]]);
    let tail: f64 = (1..k).map(|i| s_sorted[i]).sum();
    (s_sorted[0] - tail, u_sorted, v_sorted, s_sorted)
}

fn normalize_z(z: &mut [C64]) {
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        z.iter_mut().for_each(|c| *c /= norm);
    }
}

/// Seesaw refinement: linearize at the current singular frame, point z at the
/// matched filter, accept if improved; damp towards the previous iterate when
/// the full step overshoots.
fn seesaw(aset: &AMatrixSet, mut z: Vec<C64>, max_iters: usize, tol: f64) -> (f64, Vec<C64>) {
    let k = aset.rank();
    let (mut fx, mut u, mut v, _) = objective_and_svd(aset, &z);
    for _ in 0..max_iters {
        // w_j = sum_i c_i u_i^H A_j v_i with c = (1, -1, .., -1)
        let w: Vec<C64> = aset
            .matrices()
            .iter()
            .map(|a| {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..k {
                    let ui = u.column(i);
                    let vi = v.column(i);
                    let avi = a * vi;
                    let t: C64 = ui.dotc(&avi);
                    acc += if i == 0 { t } else { -t };
                }
                acc
            })
            .collect();
        let mut target: Vec<C64> = w.iter().map(|c| c.conj()).collect();
        normalize_z(&mut target);

        // damped acceptance: try the full step, then blends with the current z
        let mut accepted = false;
        let mut eta = 1.0f64;
        while eta > 1e-4 {
            let mut cand: Vec<C64> = z
                .iter()
                .zip(&target)
                .map(|(a, b)| a * C64::new(1.0 - eta, 0.0) + b * C64::new(eta, 0.0))
                .collect();
            normalize_z(&mut cand);
            let (fc, uc, vc, _) = objective_and_svd(aset, &cand);
            if fc > fx {
                let gain = fc - fx;
                z = cand;
                fx = fc;
                u = uc;
                v = vc;
                accepted = true;
                if gain < tol {
                    return (fx, z);
                }
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (fx, z)
}

fn run(name: &str, aset: &AMatrixSet, restarts: usize, seed: u64) {
    let n = aset.len();
    let t = Instant::now();
    let mut best = f64::NEG_INFINITY;
    let mut values = Vec::new();
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut z: Vec<C64> = (0..n)
            .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        normalize_z(&mut z);
        let (val, _) = seesaw(aset, z, 500, 1e-9);
        values.push((val * 1e4).round() / 1e4);
        best = best.max(val);
    }
    println!(
        "{name}: best = {best:.6} over {restarts} restarts in {:?}",
        t.elapsed()
    );
    println!("   {values:?}");
}

fn main() {
    let upb = AMatrixSet::build(&zoo::upb_shifts()).unwrap();
    let dct = AMatrixSet::build(&zoo::dct(zoo::DCT_PRESET).unwrap()).unwrap();
    for seed in 0..4u64 {
        run("UPB", &upb, 32, seed);
    }
    for seed in 0..4u64 {
        run("DCT", &dct, 32, seed);
    }
    let abc = AMatrixSet::build(&zoo::bound_abc(2.0, 2.0, 0.5).unwrap()).unwrap();
    for seed in 0..2u64 {
        run("bound_abc(2,2,0.5)", &abc, 32, seed);
    }
}
