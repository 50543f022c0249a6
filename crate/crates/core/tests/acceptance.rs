//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use hyts::domains::{random_in_h, to_htd};
use hyts::numeric::norm;
use hyts::scenarios::{self, BallParams, BALL_COMPARED};
use hyts::stability::{self, fit_linear_gain};
use hyts::{
    embed_switched, sjr, ClassKInf, Distance, Ensemble, GeneralizedTimeScale, HybridTimeDomain, Signal, Slack,
    SolverConfig, StabilityReport, SwitchingSignal,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn c1_decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for _ in 0..100 {
        let dom = common::random_gts(&mut rng, 20);
        let segs = dom.segments().unwrap().to_vec();
        for _ in 0..50 {
            let (k, t) = common::random_point(&mut rng, &segs);
            let tc = dom.continuous_part(t).map_err(|e| e.to_string())?;
            let nd = dom.discrete_part(t).map_err(|e| e.to_string())?;
            let (otc, ond) = common::oracle_parts(&segs, k, t);
            worst = worst.max((t - (tc + nd)).abs());
            worst_oracle = worst_oracle.max((tc - otc).abs()).max((nd - ond).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("max |t - (T_c + N_d)| = {worst:e}"))?;
    ensure(worst_oracle <= 1e-9, || format!("parts differ from oracle by {worst_oracle:e}"))?;
    Ok(format!("5000 points, max residual {worst:.2e}, max oracle deviation {worst_oracle:.2e}"))
}

fn c2_bijection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bp_err = 0.0f64;
    let mut id_err = 0.0f64;
    for _ in 0..100 {
        let htd = HybridTimeDomain::random(&mut rng, 15);
        let gts = htd.to_gts().map_err(|e| e.to_string())?;
        let back = to_htd(&gts).map_err(|e| e.to_string())?;
        ensure(back.tail() == htd.tail() && back.pieces().len() == htd.pieces().len(), || {
            format!("shape changed: {htd:?} -> {back:?}")
        })?;
        for (a, b) in htd.breakpoints().iter().zip(back.breakpoints()) {
            bp_err = bp_err.max(if a.is_infinite() && b.is_infinite() { 0.0 } else { (a - b).abs() });
        }
        for p in htd.pieces() {
            let hi = if p.hi.is_finite() { p.hi } else { p.lo + 7.0 };
            for s in [p.lo, 0.5 * (p.lo + hi), hi] {
                let t = s + p.j as f64;
                if !gts.contains(t) {
                    continue;
                }
                let tc = gts.continuous_part(t).map_err(|e| e.to_string())?;
                let nd = gts.discrete_part(t).map_err(|e| e.to_string())?;
                id_err = id_err.max((tc - s).abs()).max((nd - p.j as f64).abs());
            }
        }
    }
    let mut seg_err = 0.0f64;
    for _ in 0..100 {
        let gts = random_in_h(&mut rng, 15);
        let back = to_htd(&gts).and_then(|h| h.to_gts()).map_err(|e| e.to_string())?;
        let (a, b) = (gts.segments().unwrap(), back.segments().unwrap());
        ensure(a.len() == b.len(), || "segment count changed".into())?;
        for (x, y) in a.iter().zip(b) {
            ensure(x.closed_right == y.closed_right, || format!("{x:?} vs {y:?}"))?;
            seg_err = seg_err.max((x.lo - y.lo).abs());
            if x.hi.is_finite() || y.hi.is_finite() {
                seg_err = seg_err.max((x.hi - y.hi).abs());
            }
        }
    }
    ensure(bp_err <= 1e-12, || format!("breakpoint error {bp_err:e}"))?;
    ensure(seg_err <= 1e-12, || format!("scale round-trip error {seg_err:e}"))?;
    ensure(id_err <= 1e-9, || format!("T_c(t+j) = t, N_d(t+j) = j off by {id_err:e}"))?;
    Ok(format!("breakpoints {bp_err:.1e}, scales {seg_err:.1e}, identities {id_err:.1e}"))
}

fn c3_example1_continuous() -> Outcome {
    let (_, rep) = scenarios::example1_continuous(&[1.0, 0.0], 5.0, 1e-3).map_err(|e| e.to_string())?;
    ensure(rep.max_abs_error <= 1e-4, || format!("max |d - e^-t| = {:e}", rep.max_abs_error))?;
    Ok(format!("max |d(t) - e^-t| = {:.2e}", rep.max_abs_error))
}

fn c4_example1_discrete() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for r in [0.5, 1.0, 1.5, 3.0] {
        for _ in 0..20 {
            let x0 = scenarios::random_state(&mut rng, 0.01, 0.5);
            let (_, rep) = scenarios::example1_discrete(&x0, r, 8).map_err(|e| e.to_string())?;
            worst = worst.max(rep.max_identity_residual);
        }
    }
    ensure(worst <= 1e-9, || format!("identity residual {worst:e}"))?;
    let (_, rep) = scenarios::example1_discrete(&[0.1, 0.0], 3.0, 10).map_err(|e| e.to_string())?;
    let mut growth = 0.0f64;
    for (n, v) in rep.v.iter().enumerate() {
        let want = 4f64.powi(n as i32) * rep.v[0];
        growth = growth.max((v - want).abs() / want);
    }
    ensure(growth <= 1e-12, || format!("V(nr) vs 4^n V(0): relative error {growth:e}"))?;

    let ugs = |signals: Vec<Signal>| -> Result<StabilityReport, String> {
        let e = Ensemble::new(signals, Distance::Euclidean).map_err(|e| e.to_string())?;
        Ok(stability::check_ugs(&e, &ClassKInf::identity(), Slack::default()))
    };
    let unstable = ugs(scenarios::example1_discrete_ensemble(0, 20, 3.0, 8).map_err(|e| e.to_string())?)?;
    let stable = ugs(scenarios::example1_continuous_ensemble(0, 20, 5.0, 1e-3).map_err(|e| e.to_string())?)?;
    ensure(!unstable.passed(), || "ugs(identity) passed for r = 3".into())?;
    ensure(stable.passed(), || format!("ugs(identity) failed on continuous ensemble: {:?}", stable.witness))?;
    Ok(format!(
        "identity residual {worst:.1e}, 4^n growth error {growth:.1e}, ugs r=3 fail, continuous pass"
    ))
}

fn c5_example2() -> Outcome {
    let runs = scenarios::example2_ensemble(5, 20, 150.0, 1e-4, 10).map_err(|e| e.to_string())?;
    let alpha = ClassKInf::power(1.0 / 3.0, 2.0).unwrap();
    let beta = ClassKInf::power(5.0, 2.0).unwrap();
    let mut v_err = 0.0f64;
    let mut sandwich = f64::NEG_INFINITY;
    let (mut rate_lo, mut rate_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut worst_ratio = 0.0f64;
    for (sig, log) in &runs {
        ensure(!log.dwells.is_empty(), || "no complete dwell observed".into())?;
        for d in log.dwells.iter().filter(|d| d.mode == 0) {
            v_err = v_err.max((d.v_entry - d.v_exit).abs());
        }
        for (_, x) in sig.iter() {
            let (d, v) = (norm(x), scenarios::example2_v(x));
            sandwich = sandwich.max(alpha.eval(d) - v).max(v - beta.eval(d));
        }
        rate_lo = rate_lo.min(log.rate_min.unwrap());
        rate_hi = rate_hi.max(log.rate_max.unwrap());
        let x0 = sig.value(0);
        let min_norm = sig.iter().map(|(_, x)| norm(x)).fold(f64::INFINITY, f64::min);
        worst_ratio = worst_ratio.max(min_norm / norm(x0));
    }
    ensure(v_err <= 1e-6, || format!("(a) mode-0 V mismatch {v_err:e}"))?;
    ensure(sandwich <= 1e-9, || format!("(b) alpha(d) <= V <= beta(d) violated by {sandwich:e}"))?;
    ensure(rate_lo >= -10.0 - 1e-3 && rate_hi <= -0.5 + 1e-3, || {
        format!("(c) angular rates in [{rate_lo}, {rate_hi}]")
    })?;
    ensure(worst_ratio < 1e-3, || format!("(d) worst min |x|/|x0| = {worst_ratio:e}"))?;

    let signals: Vec<Signal> = runs.into_iter().map(|(s, _)| s).collect();
    let gain = fit_linear_gain(&signals, &scenarios::example2_v);
    let gamma = ClassKInf::linear(gain * (1.0 + 1e-9)).unwrap();
    let e = Ensemble::new(signals, Distance::Euclidean).map_err(|e| e.to_string())?;
    let slack = Slack { abs: 1e-9, rel: 1e-9 };
    let fitted = stability::check_k_weak(&e, &scenarios::example2_v, &alpha, &beta, &gamma, slack);
    let ident = stability::check_k_weak(&e, &scenarios::example2_v, &alpha, &beta, &ClassKInf::identity(), slack);
    ensure(fitted.passed(), || format!("(e) kweak with fitted gamma failed: {:?}", fitted.witness))?;
    ensure(!ident.passed(), || "(e) kweak with gamma = identity passed".into())?;
    Ok(format!(
        "V mismatch {v_err:.1e}, sandwich {sandwich:.1e}, rates [{rate_lo:.3}, {rate_hi:.3}], min |x|/|x0| {worst_ratio:.1e}, gamma = {gain:.3} s"
    ))
}

fn c6_ball() -> Outcome {
    let cfg = SolverConfig::default();
    let run = scenarios::bouncing_ball(&BallParams::default(), &cfg, false).map_err(|e| e.to_string())?;
    let rep = run.report;
    ensure(rep.compared == BALL_COMPARED, || format!("only {} impacts", rep.compared))?;
    ensure(rep.max_impact_time_error <= cfg.event_tol + 1e-6, || {
        format!("impact time error {:e}", rep.max_impact_time_error)
    })?;
    ensure(rep.max_restitution_error <= 1e-6 && rep.max_gap_ratio_error <= 1e-6, || {
        format!("ratio errors {:e} / {:e}", rep.max_restitution_error, rep.max_gap_ratio_error)
    })?;
    ensure((rep.t_inf_estimate - 2.0).abs() <= 1e-3, || format!("t_inf estimate {}", rep.t_inf_estimate))?;
    Ok(format!(
        "impact time error {:.1e}, ratio error {:.1e}, t_inf {:.9}",
        rep.max_impact_time_error, rep.max_restitution_error, rep.t_inf_estimate
    ))
}

fn c7_zeno() -> Outcome {
    let p = BallParams::default();
    let run = scenarios::bouncing_ball_zeno(&p, 1e-6, 1e-3, 2.0).map_err(|e| e.to_string())?;
    let rep = &run.report;
    let n = rep.resolved_impacts;
    for (k, g) in rep.gaps[..n].iter().enumerate() {
        let want = 0.5f64.powi(k as i32 + 1);
        ensure((g - want).abs() <= 1e-15, || format!("gap {} = {g}, want {want}", k + 1))?;
    }
    ensure(rep.total_gap <= 1.0 + 1e-12, || format!("total gap {}", rep.total_gap))?;
    ensure(rep.closure_point == rep.t_inf + 1.0, || format!("closure at {}", rep.closure_point))?;
    ensure(rep.post_closure_exact, || "state after the closure is not exactly (0, 0)".into())?;
    let sig = &run.signal;
    ensure(sig.dom().contains(rep.closure_point), || "closure point missing from the scale".into())?;

    let impacts: Vec<f64> = (1..=n).map(|k| p.impact_time(k)).collect();
    for (k, &t) in impacts.iter().enumerate() {
        let e = run.trace.at(t, 1e-9).ok_or_else(|| format!("no entry at t_{}", k + 1))?;
        let want = vec![vec![0.0, -p.v_plus(k)], vec![0.0, p.v_plus(k + 1)]];
        ensure(e.values.len() == 2, || format!("entry at t_{} has {} values", k + 1, e.values.len()))?;
        let dv = (e.values[0][1] - want[0][1]).abs().max((e.values[1][1] - want[1][1]).abs());
        ensure(dv <= 1e-12 && e.values[0][0] == 0.0 && e.values[1][0] == 0.0, || {
            format!("entry at t_{}: {:?}, want {want:?}", k + 1, e.values)
        })?;
    }
    for e in &run.trace.entries {
        if e.values.len() > 1 {
            ensure(impacts.iter().any(|t| (t - e.s).abs() <= 1e-9), || format!("set-valued at s = {}", e.s))?;
        }
        if e.s >= rep.t_inf {
            ensure(e.values == vec![vec![0.0, 0.0]], || format!("at s = {}: {:?}", e.s, e.values))?;
        }
    }
    Ok(format!(
        "{n} resolved impacts, total gap {:.15}, closure at {}",
        rep.total_gap, rep.closure_point
    ))
}

fn c8_embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut max_nd = 0.0f64;
    let mut tc_err = 0.0f64;
    let mut most = 0;
    for _ in 0..100 {
        let lambda = SwitchingSignal::random(&mut rng, 2.5, 50, 1e-3, 2);
        let dom = GeneralizedTimeScale::interval(0.0, 2.5).unwrap();
        let ts: Vec<f64> = (0..=250).map(|i| i as f64 * 0.01).collect();
        let xs = ts.iter().map(|t| vec![t.sin()]).collect();
        let x = Signal::from_samples(dom, ts, xs).map_err(|e| e.to_string())?;
        let emb = embed_switched(&x, &lambda, 0.5).map_err(|e| e.to_string())?;
        most = most.max(lambda.breakpoints().len());
        let d = emb.dom();
        for i in 0..emb.len() {
            let t = emb.times()[i];
            let k = emb.segment_of(i);
            let nd = d.discrete_part(t).map_err(|e| e.to_string())?;
            let tc = d.continuous_part(t).map_err(|e| e.to_string())?;
            let source = t - (1.0 - 0.5f64.powi(k as i32));
            max_nd = max_nd.max(nd);
            tc_err = tc_err.max((tc - source).abs());
        }
    }
    ensure(max_nd <= 1.0 + 1e-12, || format!("max N_d = {max_nd}"))?;
    ensure(tc_err <= 1e-9, || format!("T_c misses source time by {tc_err:e}"))?;
    let fixture: [(f64, &[f64]); 5] =
        [(0.5, &[0.5]), (1.0, &[1.0, 1.5]), (1.5, &[2.0]), (2.0, &[2.5, 2.75]), (3.0, &[3.75])];
    for (s, want) in fixture {
        let got = sjr(&[1.0, 2.0], 0.5, s).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("S_J(1/2)({s}) = {got:?}, want {want:?}"))?;
    }
    Ok(format!("up to {most} switches, max N_d {max_nd:.15}, T_c error {tc_err:.1e}, fixture exact"))
}

fn scalar(ts: &[f64], f: impl Fn(f64) -> f64) -> Signal {
    let dom = GeneralizedTimeScale::interval(ts[0], *ts.last().unwrap()).unwrap();
    Signal::from_samples(dom, ts.to_vec(), ts.iter().map(|&t| vec![f(t)]).collect()).unwrap()
}

fn c9_checkers() -> Outcome {
    let ts: Vec<f64> = (0..=1000).map(|i| i as f64 * 0.01).collect();
    let decay = || Ensemble::new(vec![scalar(&ts, |t| (-t).exp())], Distance::Euclidean).unwrap();
    let flat = || Ensemble::new(vec![scalar(&ts, |_| 1.0)], Distance::Euclidean).unwrap();
    let grow = || Ensemble::new(vec![scalar(&ts, |t| 0.1 * t.exp())], Distance::Euclidean).unwrap();
    let id = ClassKInf::identity();
    let sq = |x: &[f64]| x[0] * x[0];
    let alpha = ClassKInf::power(1.0 / 3.0, 2.0).unwrap();
    let beta = ClassKInf::power(5.0, 2.0).unwrap();
    let gamma_sq = ClassKInf::power(1.0, 2.0).unwrap();
    let s = Slack::default();
    let bound = stability::ugs_bound_from_kweak(&alpha, &beta, &id);
    type Check = Box<dyn Fn(&Ensemble) -> StabilityReport>;
    let checks: Vec<(&str, Check, Ensemble, Ensemble)> = vec![
        ("ugs", Box::new(move |e| stability::check_ugs(e, &ClassKInf::identity(), s)), decay(), grow()),
        (
            "attractivity",
            Box::new(move |e| stability::check_attractivity(e, 0.1, 5.0, s).unwrap()),
            decay(),
            flat(),
        ),
        (
            "kweak",
            Box::new(move |e| stability::check_k_weak(e, &sq, &alpha, &beta, &ClassKInf::identity(), s)),
            decay(),
            grow(),
        ),
        ("c1", Box::new(|e| stability::falsify_c1(e, 0.2, 3.0).unwrap()), decay(), flat()),
        (
            "pugas",
            Box::new(move |e| stability::check_pugas(e, &ClassKInf::identity(), &[(0.2, 3.0)], s).unwrap()),
            decay(),
            flat(),
        ),
        (
            "corollary1",
            Box::new(move |e| stability::check_corollary1(e, &sq, 1.0, 0.2, 1.0, 0.01, None, s).unwrap()),
            decay(),
            flat(),
        ),
        (
            "strict",
            Box::new(move |e| {
                stability::check_strict_decrease(&e.signals[0], &sq, &gamma_sq, &Distance::Euclidean, 1e-2)
            }),
            decay(),
            flat(),
        ),
    ];
    for (name, check, pos, neg) in &checks {
        let p = check(pos);
        ensure(p.passed(), || format!("{name}: positive fixture failed with {:?}", p.witness))?;
        let n1 = check(neg);
        let n2 = check(neg);
        ensure(!n1.passed(), || format!("{name}: negative fixture passed"))?;
        let w = n1.witness.as_ref().ok_or_else(|| format!("{name}: failure without witness"))?;
        ensure(n2.witness.as_ref() == Some(w), || format!("{name}: witness not reproducible"))?;
        let sig = &neg.signals[w.signal];
        ensure(sig.times()[w.i_s] == w.s && sig.times()[w.i_t] == w.t, || format!("{name}: witness times"))?;
        ensure(w.lhs >= w.rhs, || format!("{name}: witness does not violate: {w:?}"))?;
    }
    let mut err = 0.0f64;
    for i in 0..=1000 {
        let x = i as f64 * 0.01;
        err = err.max((bound.eval(x) - 15f64.sqrt() * x).abs());
    }
    ensure(err <= 1e-12, || format!("composition differs from sqrt(15) s by {err:e}"))?;
    Ok(format!("{} checks with positive and negative fixtures, sqrt(15) error {err:.1e}", checks.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("decomposition identity", c1_decomposition),
        ("hybrid time domain bijection", c2_bijection),
        ("example 1 continuous decay", c3_example1_continuous),
        ("example 1 lattice dynamics", c4_example1_discrete),
        ("example 2 switched system", c5_example2),
        ("bouncing ball impacts", c6_ball),
        ("zeno passage", c7_zeno),
        ("switched embedding", c8_embedding),
        ("checker soundness", c9_checkers),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = match panic::catch_unwind(AssertUnwindSafe(f)) {
            Ok(o) => o,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
