use std::time::Instant;

use gent_core::bound::AMatrixSet;
use gent_core::linalg::{C64, CMatrix};
use gent_core::zoo;
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
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

fn svd_frames(aset: &AMatrixSet, z: &[C64]) -> (f64, CMatrix, CMatrix) {
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
    let s = DVector::from_fn(k, |i, _| svd.singular_values[order[i]]);
    let tail: f64 = (1..k).map(|i| s[i]).sum();
    (s[0] - tail, u_sorted, v_sorted)
}

fn normalize_z(z: &mut [C64]) {
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        z.iter_mut().for_each(|c| *c /= norm);
    }
}

fn seesaw_stage(
    aset: &AMatrixSet,
    z: &mut Vec<C64>,
    fx: &mut f64,
    iters: usize,
    tol: f64,
) {
    let k = aset.rank();
    let (_, mut u, mut v) = svd_frames(aset, z);
    let mut stall_gain = 0.0;
    let mut stall_count = 0usize;
    for _ in 0..iters {
        let w: Vec<C64> = aset
            .matrices()
            .iter()
            .map(|a| {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..k {
                    let avi = a * v.column(i);
                    let t: C64 = u.column(i).dotc(&avi);
                    acc += if i == 0 { t } else { -t };
                }
                acc
            })
            .collect();
        let mut target: Vec<C64> = w.iter().map(|c| c.conj()).collect();
        normalize_z(&mut target);
        let mut eta = 1.0f64;
        let mut accepted = false;
        while eta > 1e-6 {
            let mut cand: Vec<C64> = z
                .iter()
                .zip(&target)
                .map(|(a, b)| a * C64::new(1.0 - eta, 0.0) + b * C64::new(eta, 0.0))
                .collect();
            normalize_z(&mut cand);
            let (fc, uc, vc) = svd_frames(aset, &cand);
            if fc > *fx {
                stall_gain += fc - *fx;
                stall_count += 1;
                *z = cand;
                *fx = fc;
                u = uc;
                v = vc;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            return;
        }
        if stall_count >= 6 {
            if stall_gain < tol {
                return;
            }
            stall_gain = 0.0;
            stall_count = 0;
        }
    }
}

fn refine_with_hops(
    aset: &AMatrixSet,
    rng: &mut ChaCha8Rng,
    hops: usize,
    _kick: f64,
    tol: f64,
) -> (f64, Vec<C64>) {
    let n = aset.len();
    let mut z: Vec<C64> = (0..n)
        .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    normalize_z(&mut z);
    let (mut fx, _, _) = svd_frames(aset, &z);
    seesaw_stage(aset, &mut z, &mut fx, 600, tol);
    let kicks = [0.6, 0.3, 0.12];
    for hop in 0..hops {
        let kick = kicks[hop % kicks.len()];
        let mut cand: Vec<C64> = z
            .iter()
            .map(|c| {
                let dre: f64 = StandardNormal.sample(rng);
                let dim: f64 = StandardNormal.sample(rng);
                c + C64::new(kick * dre, kick * dim)
            })
            .collect();
        normalize_z(&mut cand);
        let (mut fc, _, _) = svd_frames(aset, &cand);
        seesaw_stage(aset, &mut cand, &mut fc, 600, tol);
        if fc > fx {
            fx = fc;
            z = cand;
        }
    }
    (fx, z)
}

fn run(name: &str, aset: &AMatrixSet, restarts: usize, seed: u64, hops: usize, kick: f64) -> f64 {
    let t = Instant::now();
    let mut best = f64::NEG_INFINITY;
    let mut best_z: Vec<C64> = Vec::new();
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let (val, z) = refine_with_hops(aset, &mut rng, hops, kick, 1e-9);
        if val > best {
            best = val;
            best_z = z;
        }
    }
    // champion polish: deterministic multi-scale kicks from the best point
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let scales = [0.5, 0.2, 0.08, 0.03];
    for round in 0..32 {
        let kick = scales[round % scales.len()];
        let mut cand: Vec<C64> = best_z
            .iter()
            .map(|c| {
                let dre: f64 = StandardNormal.sample(&mut rng);
                let dim: f64 = StandardNormal.sample(&mut rng);
                c + C64::new(kick * dre, kick * dim)
            })
            .collect();
        normalize_z(&mut cand);
        let (mut fc, _, _) = svd_frames(aset, &cand);
        seesaw_stage(aset, &mut cand, &mut fc, 600, 1e-10);
        if fc > best {
            best = fc;
            best_z = cand;
        }
    }
    println!(
        "{name} seed={seed} restarts={restarts} hops={hops}+polish: best = {best:.7} in {:?}",
        t.elapsed()
    );
    best
}

fn spread(vals: &[f64]) -> f64 {
    vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - vals.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn walk_restart(
    aset: &AMatrixSet,
    rng: &mut ChaCha8Rng,
    hops: usize,
    kick: f64,
    slack: f64,
    tol: f64,
) -> f64 {
    let n = aset.len();
    let mut center: Vec<C64> = (0..n)
        .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    normalize_z(&mut center);
    let (mut fc0, _, _) = svd_frames(aset, &center);
    seesaw_stage(aset, &mut center, &mut fc0, 600, tol);
    let mut best = fc0;
    let mut f_center = fc0;
    for _ in 0..hops {
        let mut cand: Vec<C64> = center
            .iter()
            .map(|c| {
                let dre: f64 = StandardNormal.sample(rng);
                let dim: f64 = StandardNormal.sample(rng);
                c + C64::new(kick * dre, kick * dim)
            })
            .collect();
        normalize_z(&mut cand);
        let (mut fc, _, _) = svd_frames(aset, &cand);
        seesaw_stage(aset, &mut cand, &mut fc, 600, tol);
        best = best.max(fc);
        if fc > f_center - slack {
            center = cand;
            f_center = fc;
        }
    }
    best
}

fn run_walk(name: &str, aset: &AMatrixSet, restarts: usize, seed: u64, hops: usize) -> f64 {
    let t = Instant::now();
    let mut best = f64::NEG_INFINITY;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        best = best.max(walk_restart(aset, &mut rng, hops, 0.35, 0.01, 1e-9));
    }
    println!(
        "{name} seed={seed} walk restarts={restarts} hops={hops}: best = {best:.7} in {:?}",
        t.elapsed()
    );
    best
}

fn main() {
    let _ = ChaCha8Rng::seed_from_u64(0).random::<f64>();
    let upb = AMatrixSet::build(&zoo::upb_shifts()).unwrap();
    let dct = AMatrixSet::build(&zoo::dct(zoo::DCT_PRESET).unwrap()).unwrap();
    let abc = AMatrixSet::build(&zoo::bound_abc(2.0, 2.0, 0.5).unwrap()).unwrap();

    // big hunt: what is the top of the UPB landscape and how rare is it?
    let t = Instant::now();
    let mut vals: Vec<f64> = Vec::new();
    for r in 0..4000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(123_456);
        rng.set_stream(r);
        let n = upb.len();
        let mut z: Vec<C64> = (0..n)
            .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        normalize_z(&mut z);
        let (mut fx, _, _) = svd_frames(&upb, &z);
        seesaw_stage(&upb, &mut z, &mut fx, 600, 1e-9);
        vals.push(fx);
    }
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    println!(
        "UPB hunt (4000 seesaws, {:?}): top20 = {:?}",
        t.elapsed(),
        vals.iter().take(20).map(|v| (v * 1e5).round() / 1e5).collect::<Vec<_>>()
    );
    let top = vals[0];
    let near = vals.iter().filter(|&&v| v > top - 1e-3).count();
    println!("hit rate within 1e-3 of top: {near}/4000");

    println!("== walk stability (32 restarts, hops=16)");
    let v: Vec<f64> = (0..8).map(|s| run_walk("UPB", &upb, 32, s, 16)).collect();
    println!("UPB spread: {:.2e}", spread(&v));
    let v: Vec<f64> = (0..6).map(|s| run_walk("DCT", &dct, 32, s, 16)).collect();
    println!("DCT spread: {:.2e}", spread(&v));
    let v: Vec<f64> = (0..3).map(|s| run_walk("abc", &abc, 8, s, 16)).collect();
    println!("abc (8 restarts) spread: {:.2e}", spread(&v));
}
