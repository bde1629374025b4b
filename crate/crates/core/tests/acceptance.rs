//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! output. A failing criterion is reported, never panicked on; reference
//! values are recomputed here independently of the library wherever the
//! library itself is what is being checked.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shapeapprox_core::best_approx::jackson_ratio;
use shapeapprox_core::experiments::{random_nonnegative_inputs, run_lambda2_counterexample};
use shapeapprox_core::generator::build_generator_from;
use shapeapprox_core::moduli::fitted_exponent;
use shapeapprox_core::operators::{
    derivative_bridge_check, gavrea_generator_image, gavrea_image, genuine_durrmeyer_image, lupas_image,
    MnOperator,
};
use shapeapprox_core::special::{lupas_product_identity_check, phi_bernstein_expansion};
use shapeapprox_core::{
    best_uniform, check_k_monotone_poly, Catalog, Float, Polynomial, Rational, Result, Scalar,
    DEFAULT_PRECISION_BITS,
};

const BITS: u32 = DEFAULT_PRECISION_BITS;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

fn fact(k: usize) -> Rational {
    (1..=k as i64).fold(q(1, 1), |acc, v| acc * Rational::from(v))
}

fn binom(n: usize, k: usize) -> Rational {
    if k > n {
        return q(0, 1);
    }
    fact(n) / (fact(k) * fact(n - k))
}

fn poch(a: f64, k: usize) -> f64 {
    (0..k).map(|j| a + j as f64).product()
}

fn padded(c: &[Rational], len: usize) -> Vec<Rational> {
    let mut v = c.to_vec();
    v.resize(len.max(c.len()), q(0, 1));
    v
}

fn horner<T: Clone + std::ops::Mul<Output = T> + std::ops::Add<Output = T>>(c: &[T], x: &T, zero: T) -> T {
    c.iter().rev().fold(zero, |acc, a| acc * x.clone() + a.clone())
}

fn grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

// 1. Genuine Durrmeyer moments --------------------------------------------

/// Monomial coefficients of the closed form
/// `(n-1)! i!/(n+i-1)! sum_j C(i-1,j) C(n,i-j) x^(i-j)`.
fn closed_form_moment(n: usize, i: usize) -> Vec<Rational> {
    if i == 0 {
        return vec![q(1, 1)];
    }
    let lead = fact(n - 1) * fact(i) / fact(n + i - 1);
    let mut c = vec![q(0, 1); i + 1];
    for j in i.saturating_sub(n)..i {
        c[i - j] += binom(i - 1, j) * binom(n, i - j) * lead.clone();
    }
    c
}

/// `U_n(e_i, x)` straight from the operator's definition with Beta integrals.
fn definition_moment(n: usize, i: usize, x: &Rational) -> Rational {
    let one_minus = q(1, 1) - x.clone();
    let p = |k: usize| binom(n, k) * pow(x, k) * pow(&one_minus, n - k);
    let f0 = if i == 0 { q(1, 1) } else { q(0, 1) };
    let mut acc = f0 * p(0) + p(n);
    for k in 1..n {
        let integral = binom(n - 2, k - 1) * fact(k + i - 1) * fact(n - k - 1) / fact(n + i - 1);
        acc += Rational::from(n as i64 - 1) * p(k) * integral;
    }
    acc
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(q(1, 1), |acc, _| acc * x.clone())
}

fn criterion_1() -> Result<Outcome> {
    let mut checked = 0;
    for n in 2..=30usize {
        for i in 0..=4usize {
            let want = closed_form_moment(n, i);
            let e = Polynomial::<Rational>::e(i, &());
            let got = genuine_durrmeyer_image::<Rational, _>(n, &e, None, &())?.to_monomial();
            let len = got.coeffs().len().max(want.len());
            if padded(got.coeffs(), len) != padded(&want, len) {
                return outcome(
                    false,
                    format!("operator image differs from the closed form at n={n} i={i}"),
                );
            }
            // both sides have degree <= n, so n+1 nodes settle equality
            for j in 0..=n {
                let x = q(j as i64, n as i64 + 1);
                if definition_moment(n, i, &x) != horner(&want, &x, q(0, 1)) {
                    return outcome(
                        false,
                        format!("closed form differs from the definition at n={n} i={i}"),
                    );
                }
            }
            checked += 1;
        }
        let nn = n as i64;
        let specials = [
            vec![q(1, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(0, 1), q(2, nn + 1), q(nn - 1, nn + 1)],
        ];
        for (i, s) in specials.iter().enumerate() {
            if padded(&closed_form_moment(n, i), 3) != padded(s, 3) {
                return outcome(false, format!("low-order specialization fails at n={n} i={i}"));
            }
        }
    }
    outcome(
        true,
        format!("{checked} (n, i) pairs exact, e0/e1/e2 specializations exact"),
    )
}

// 2. Lupas moments --------------------------------------------------------

fn lupas_display(n: usize, a: f64, i: usize, x: f64) -> f64 {
    let n = n as f64;
    let d = n + 2.0 * a + 2.0;
    match i {
        0 => 1.0,
        1 => (n * x + a + 1.0) / d,
        _ => (n * (n - 1.0) * x * x + 2.0 * n * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / (d * (d + 1.0)),
    }
}

/// `sum_k p_{n,k}(x) <p_{n,k}, t^i>/<p_{n,k}, 1>` with the Beta-ratio
/// `(k+a+1)_i / (n+2a+2)_i`.
fn lupas_beta_oracle(n: usize, a: f64, i: usize, x: f64) -> f64 {
    let mut acc = 0.0;
    let mut c = 1.0;
    for k in 0..=n {
        if k > 0 {
            c *= (n - k + 1) as f64 / k as f64;
        }
        let p = c * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32);
        acc += p * poch(k as f64 + a + 1.0, i) / poch(n as f64 + 2.0 * a + 2.0, i);
    }
    acc
}

fn criterion_2() -> Result<Outcome> {
    let mut worst = 0f64;
    let mut worst_end = 0f64;
    for &a in &[-0.4, 0.0, 0.5, 1.0, 2.0] {
        for n in 1..=20usize {
            for i in 0..=2usize {
                let img = lupas_image::<f64, _>(n, &a, &Polynomial::<f64>::e(i, &()), None)?;
                for x in grid(101) {
                    let v = img.eval(&x)?;
                    worst = worst
                        .max((v - lupas_display(n, a, i, x)).abs())
                        .max((v - lupas_beta_oracle(n, a, i, x)).abs());
                }
                let want = poch(a + 1.0, i) / poch(n as f64 + 2.0 * a + 2.0, i);
                worst_end = worst_end.max((img.eval(&0.0)? - want).abs());
            }
        }
    }
    outcome(
        worst <= 1e-10 && worst_end <= 1e-10,
        format!("max residual {worst:.3e}, endpoint residual {worst_end:.3e} (tol 1e-10)"),
    )
}

// 3. Identity suite -------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, bits: u32) -> Polynomial<Float> {
    let deg = rng.gen_range(0..=8);
    let c = (0..=deg)
        .map(|_| Float::with_val(bits, rng.gen_range(-1.0..1.0)))
        .collect();
    Polynomial::monomial(c, &bits)
}

fn max_diff(a: &Polynomial<Float>, b: &Polynomial<Float>, points: usize) -> f64 {
    grid(points)
        .into_iter()
        .map(|x| {
            let x = Float::with_val(BITS, x);
            (a.eval_unchecked(&x) - b.eval_unchecked(&x)).abs().to_f64()
        })
        .fold(0.0, f64::max)
}

/// Normalized Gegenbauer polynomial `C_n^(a+1/2)(2x-1) / C_n^(a+1/2)(1)`.
fn gegenbauer_normalized(n: usize, a: f64, x: f64) -> f64 {
    let lam = a + 0.5;
    let u = 2.0 * x - 1.0;
    let (mut prev, mut cur) = (1.0, 2.0 * lam * u);
    if n == 0 {
        return 1.0;
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * (kf + lam - 1.0) * u * cur - (kf + 2.0 * lam - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    let at_one = (1..=n)
        .map(|k| (2.0 * lam + k as f64 - 1.0) / k as f64)
        .product::<f64>();
    cur / at_one
}

fn criterion_3() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
    let alphas = [-0.4, 0.0, 0.5, 1.0, 2.0];

    let mut deriv = 0f64;
    for n in 1..=10usize {
        for nu in 1..=n.min(3) {
            for &a in &[0.0, 0.5, 2.0] {
                let f = random_poly(&mut rng, BITS);
                let af = Float::with_val(BITS, a);
                let lhs = lupas_image(n, &af, &f, None)?.differentiate(nu);
                let coef =
                    (0..nu).map(|j| (n - j) as f64).product::<f64>() / poch(n as f64 + 2.0 * a + 2.0, nu);
                let shifted = Float::with_val(BITS, a + nu as f64);
                let rhs = lupas_image(n - nu, &shifted, &f.differentiate(nu), None)?
                    .scale(&Float::with_val(BITS, coef));
                deriv = deriv.max(max_diff(&lhs, &rhs, 50));
            }
        }
    }

    let mut phiber = 0f64;
    for &a in &alphas {
        let af = Float::with_val(BITS, a);
        for n in 0..=12usize {
            let p = phi_bernstein_expansion(n, &af)?;
            for x in grid(101) {
                let v = p.eval_unchecked(&Float::with_val(BITS, x)).to_f64();
                phiber = phiber.max((v - gegenbauer_normalized(n, a, x)).abs());
            }
        }
    }

    let mut lup2 = 0f64;
    let mut pairs = 0;
    while pairs < 20 {
        let (x, t): (f64, f64) = (rng.gen(), rng.gen());
        if (x + t - 1.0).abs() < 1e-3 {
            continue;
        }
        let n = rng.gen_range(1..=12);
        let a = alphas[rng.gen_range(0..alphas.len())];
        let r = lupas_product_identity_check(
            n,
            &Float::with_val(BITS, a),
            &Float::with_val(BITS, x),
            &Float::with_val(BITS, t),
        )?;
        lup2 = lup2.max(r.to_f64());
        pairs += 1;
    }

    let mut bridge = 0f64;
    for n in 1..=10usize {
        for _ in 0..3 {
            let f = random_poly(&mut rng, BITS);
            bridge = bridge.max(derivative_bridge_check(n, &f)?.to_f64());
        }
    }

    outcome(
        deriv <= 1e-9 && phiber <= 1e-9 && lup2 <= 1e-10 && bridge <= 1e-9,
        format!(
            "derivative identity {deriv:.3e} (1e-9), phi expansion {phiber:.3e} (1e-9), \
             product identity {lup2:.3e} (1e-10), bridge {bridge:.3e} (1e-9)"
        ),
    )
}

// 4. Generators -----------------------------------------------------------

fn loglog(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let (mx, my) = (
        lx.iter().sum::<f64>() / lx.len() as f64,
        ly.iter().sum::<f64>() / ly.len() as f64,
    );
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn criterion_4() -> Result<Outcome> {
    let mut passed = true;
    let mut parts = Vec::new();
    for r in 1..=3usize {
        let ns: Vec<usize> = [32usize, 64, 128, 256, 512]
            .into_iter()
            .filter(|&n| n > 8 * r)
            .collect();
        let (mut int_err, mut sign_worst, mut d2) = (0f64, 0f64, Vec::new());
        for &n in &ns {
            let g = build_generator_from(n, r, BITS)?;
            let bits = g.precision_bits;
            let a = g.p.to_monomial().into_coeffs();
            let moment = |mu: usize| {
                a.iter()
                    .enumerate()
                    .fold(Float::with_val(bits, 0), |acc, (k, c)| {
                        acc + c.clone() / (k + mu + 1) as u32
                    })
            };
            int_err = int_err.max((moment(0) - 1u32).abs().to_f64());
            d2.push((Float::with_val(bits, 1) - moment(2)).to_f64());
            for nu in 0..=r {
                let d = g.p.to_monomial().differentiate(nu).into_coeffs();
                let vals: Vec<f64> = grid(2048)
                    .into_iter()
                    .map(|x| horner(&d, &Float::with_val(bits, x), Float::with_val(bits, 0)).to_f64())
                    .collect();
                let scale = vals.iter().fold(0f64, |m, v| m.max(v.abs()));
                let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
                sign_worst = sign_worst.min(min / scale);
            }
        }
        let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
        let slope = loglog(&xs, &d2);
        let n2: Vec<f64> = xs.iter().zip(&d2).map(|(n, d)| n * n * d).collect();
        let spread =
            n2.iter().copied().fold(0f64, f64::max) / n2.iter().copied().fold(f64::INFINITY, f64::min);
        let ok = int_err <= 1e-20 && sign_worst >= -1e-15 && (-2.4..=-1.6).contains(&slope) && spread <= 4.0;
        passed &= ok;
        parts.push(format!(
            "r={r}: |∫P-1| {int_err:.1e}, min P^(nu)/sup {sign_worst:.1e}, slope {slope:.3}, n^2 delta_2 spread {spread:.2}"
        ));
    }
    outcome(passed, parts.join("; "))
}

// 5. Shape preservation ---------------------------------------------------

fn criterion_5() -> Result<Outcome> {
    let mut checks = 0;
    let mut ops = Vec::new();
    for qq in 1..=4usize {
        for &n in &[30usize, 60, 120] {
            let op = MnOperator::new(qq, n)?;
            for f in Catalog::q_monotone(qq) {
                let img = op.image(&f, None)?;
                for k in 0..=qq {
                    let rep = check_k_monotone_poly(&img, k, 1e-9)?;
                    if !rep.passed() {
                        return outcome(
                            false,
                            format!("M_n({f:?}) with q={qq} n={n} fails k={k}: {:?}", rep.verdict),
                        );
                    }
                    checks += 1;
                }
            }
            ops.push(op);
        }
    }
    let mut worst_neg = 0f64;
    let mut worst_excess = f64::NEG_INFINITY;
    for (j, f) in random_nonnegative_inputs(2024, 50).iter().enumerate() {
        let op = &ops[j % ops.len()];
        let img = op.image(f, None)?;
        let sup_f = grid(1001).into_iter().map(|x| f.eval(x)).fold(0f64, f64::max);
        for x in grid(1001) {
            let v = img
                .eval_unchecked(&Float::with_val(op.precision_bits(), x))
                .to_f64();
            worst_neg = worst_neg.min(v);
            worst_excess = worst_excess.max(v.abs() - sup_f);
        }
    }
    outcome(
        worst_neg >= -1e-12 && worst_excess <= 1e-12,
        format!(
            "{checks} k-monotonicity checks pass; 50 random inputs: min image {worst_neg:.2e}, \
             max (|image| - ||f||) {worst_excess:.2e}"
        ),
    )
}

// 6. Gavrea moments -------------------------------------------------------

fn criterion_6() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..10 {
        let deg = rng.gen_range(0..=6usize);
        let mut a: Vec<Rational> = (0..=deg)
            .map(|_| Rational::from(rng.gen_range(0..=9i64)))
            .collect();
        if a.iter().all(|c| *c == 0) {
            a[0] = q(1, 1);
        }
        // nonnegative coefficients make every derivative nonnegative on [0, 1]
        let mass = a
            .iter()
            .enumerate()
            .fold(q(0, 1), |acc, (k, c)| acc + c.clone() / q(k as i64 + 1, 1));
        for c in &mut a {
            *c /= &mass;
        }
        let second = a
            .iter()
            .enumerate()
            .fold(q(0, 1), |acc, (k, c)| acc + c.clone() / q(k as i64 + 3, 1));
        let alpha = q(1, 1) - second;
        let want = [
            vec![q(1, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(0, 1), alpha.clone(), q(1, 1) - alpha.clone()],
        ];
        for (i, w) in want.iter().enumerate() {
            let img =
                gavrea_image::<Rational, _>(&a, &Polynomial::<Rational>::e(i, &()), None, &())?.to_monomial();
            let len = img.coeffs().len().max(3);
            if padded(img.coeffs(), len) != padded(w, len) {
                return outcome(
                    false,
                    format!("random generating polynomial {trial}: H(e_{i}) mismatch"),
                );
            }
        }
    }
    let mut worst = 0f64;
    for r in 1..=3usize {
        for &n in &[64usize, 128] {
            let g = build_generator_from(n, r, BITS)?;
            let bits = g.precision_bits;
            let a = g.p.to_monomial().into_coeffs();
            let second = a
                .iter()
                .enumerate()
                .fold(Float::with_val(bits, 0), |acc, (k, c)| {
                    acc + c.clone() / (k + 3) as u32
                });
            let alpha = Float::with_val(bits, 1) - second;
            for i in 0..=2usize {
                let img = gavrea_generator_image(&g, &Polynomial::<Float>::e(i, &bits), None)?;
                for x in grid(101) {
                    let xf = Float::with_val(bits, x);
                    let want = match i {
                        0 => Float::with_val(bits, 1),
                        1 => xf.clone(),
                        _ => xf.clone() * &xf + xf.clone() * (Float::with_val(bits, 1) - &xf) * &alpha,
                    };
                    worst = worst.max((img.eval_unchecked(&xf) - want).abs().to_f64());
                }
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("10 random generating polynomials exact; built generators max residual {worst:.3e} (1e-10)"),
    )
}

// 7. Modulus exponents ----------------------------------------------------

fn criterion_7() -> Result<Outcome> {
    let ts: Vec<f64> = (4..=10).map(|i| 2f64.powi(-i)).collect();
    let mut worst = 0f64;
    let mut parts = Vec::new();
    for &eps in &[0.3, 0.5, 0.7] {
        let f = move |x: f64| x.powf(eps);
        for &lam in &[0.0, 1.0, 1.5] {
            let target = (eps / (1.0 - lam / 2.0)).min(2.0);
            let got = fitted_exponent(&f, 2, lam, &ts);
            worst = worst.max((got - target).abs());
            parts.push(format!("({eps},{lam}) {got:.3}/{target:.3}"));
        }
    }
    outcome(
        worst <= 0.05,
        format!("max |fitted - target| {worst:.4} (0.05); {}", parts.join(" ")),
    )
}

// 8. Voronovskaya ---------------------------------------------------------

fn criterion_8() -> Result<Outcome> {
    let n = 1usize << 14;
    let f = |x: f64| x.sqrt();
    // p_{n,k}(1/2) = C(n,k) 2^-n through log-binomials
    let mut log_c = 0f64;
    let mut sum = 0f64;
    for k in 0..=n {
        if k > 0 {
            log_c += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        sum += (log_c - n as f64 * std::f64::consts::LN_2).exp() * f(k as f64 / n as f64);
    }
    let product = n as f64 * (f(0.5) - sum);
    let limit = 2f64.sqrt() / 16.0;
    let rel = (product / limit - 1.0).abs();
    outcome(
        rel <= 0.05,
        format!("n(f - B_n f)(1/2) = {product:.6e}, limit {limit:.6e}, relative gap {rel:.2e} (0.05)"),
    )
}

// 9. Jackson ratios -------------------------------------------------------

fn criterion_9() -> Result<Outcome> {
    let ns: Vec<usize> = (10..=40).step_by(5).collect();
    let cases: [(&str, Box<dyn Fn(f64) -> f64>); 2] = [
        ("exp", Box::new(f64::exp)),
        ("(x-1/2)_+^3", Box::new(|x: f64| (x - 0.5).max(0.0).powi(3))),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, f) in &cases {
        let mut ratios = Vec::new();
        let mut resolved = true;
        for &n in &ns {
            let j = jackson_ratio(f.as_ref(), 4, n)?;
            resolved &= j.resolved;
            ratios.push(j.ratio);
        }
        let finite = ratios.iter().all(|r| r.is_finite());
        let mut sorted = ratios.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[sorted.len() / 2];
        let max = sorted[sorted.len() - 1];
        let ok = finite && max <= 10.0 * median && resolved;
        passed &= ok;
        parts.push(format!(
            "{name}: max/median {:.3}, errors above noise floor: {resolved}, ratios {:?}",
            max / median,
            ratios.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>()
        ));
    }
    outcome(passed, parts.join("; "))
}

// 10. lambda = 2 ----------------------------------------------------------

fn criterion_10() -> Result<Outcome> {
    let (table, assertions) = run_lambda2_counterexample(&[1e-2, 1e-4, 1e-6, 1e-8], 5, 257)?;
    let omegas = table.column("omega");
    let errors = table.column("error");
    let passed = assertions.iter().all(|a| a.passed);
    outcome(
        passed,
        format!(
            "omega {:?}; E_5 {:?}; {}",
            omegas.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>(),
            errors.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>(),
            assertions
                .iter()
                .map(|a| format!("{}={} ({})", a.name, a.passed, a.detail))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

// 11. Unconstrained oracle ------------------------------------------------

fn criterion_11() -> Result<Outcome> {
    let e1 = best_uniform(&|x: f64| x * x, 1, 257)?;
    let mut ok = (e1.error - 0.125).abs() <= 1e-3 && e1.equioscillation >= 3;
    let cases: [(&str, Box<dyn Fn(f64) -> f64>, usize); 3] = [
        ("exp", Box::new(f64::exp), 8),
        ("ln(x+1.5)", Box::new(|x: f64| (x + 1.5).ln()), 6),
        ("x^5", Box::new(|x: f64| x.powi(5)), 4),
    ];
    let mut worst = String::new();
    for (name, f, top) in &cases {
        for n in 1..=*top {
            let r = best_uniform(f.as_ref(), n, 257)?;
            if r.equioscillation < n + 2 {
                ok = false;
                worst = format!("; {name} n={n} alternates only {} times", r.equioscillation);
            }
        }
    }
    outcome(
        ok,
        format!(
            "E_1(e_2) = {:.6} (0.125 ± 1e-3), {} alternations; smooth cases equioscillate at >= n+2{worst}",
            e1.error, e1.equioscillation
        ),
    )
}

fn main() {
    let criteria: [(u32, Duration, fn() -> Result<Outcome>); 11] = [
        (1, Duration::from_secs(10), criterion_1),
        (2, Duration::from_secs(10), criterion_2),
        (3, Duration::from_secs(30), criterion_3),
        (4, Duration::from_secs(300), criterion_4),
        (5, Duration::from_secs(300), criterion_5),
        (6, Duration::from_secs(30), criterion_6),
        (7, Duration::from_secs(120), criterion_7),
        (8, Duration::from_secs(60), criterion_8),
        (9, Duration::from_secs(300), criterion_9),
        (10, Duration::from_secs(120), criterion_10),
        (11, Duration::from_secs(10), criterion_11),
    ];
    let mut failed = 0;
    for (id, budget, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(Ok(o)) => (o.passed, o.detail),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        let in_time = elapsed <= budget;
        let verdict = passed && in_time;
        if !verdict {
            failed += 1;
        }
        println!(
            "criterion {id}: {} [{:.2}s of {}s] {detail}",
            if verdict { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
}
