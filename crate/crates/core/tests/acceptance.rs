//! End-to-end acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, even when all of them pass.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dwcalc::cocycles::{omega_l, Level};
use dwcalc::cyclotomic::Cyclotomic;
use dwcalc::seifert::{dw_formula_for, dw_prime_closed_form, SeifertData};
use dwcalc::verify::{self, SuiteReport, VerifyConfig};
use num_rational::BigRational;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn from_report(r: SuiteReport) -> Result<String, String> {
    let notes = if r.notes.is_empty() {
        String::new()
    } else {
        format!("; {}", r.notes.join("; "))
    };
    match r.failure {
        None => Ok(format!("{} cases{notes}", r.cases)),
        Some(w) => Err(format!("{} cases, first failure: {w}{notes}", r.cases)),
    }
}

fn cfg(max_order: u32) -> VerifyConfig {
    VerifyConfig {
        max_order,
        ..VerifyConfig::default()
    }
}

fn cocycle_validity() -> Result<String, String> {
    from_report(verify::cocycle_suite(&cfg(12)))
}

fn kappa_equivalence() -> Result<String, String> {
    from_report(verify::kappa_suite(&VerifyConfig {
        kappa_range: 12,
        ..cfg(10)
    }))
}

fn orthonormality() -> Result<String, String> {
    from_report(verify::orthonormality_suite(&cfg(12)))
}

fn fusion() -> Result<String, String> {
    from_report(verify::fusion_suite(&cfg(8)))
}

fn untwisted_formula_vs_counting() -> Result<String, String> {
    from_report(verify::formula_vs_oracle_suite(&VerifyConfig {
        seifert_cases: 100,
        ..cfg(16)
    }))
}

fn prime_closed_form() -> Result<String, String> {
    from_report(verify::prime_vs_formula_suite(&VerifyConfig {
        branch_cases: 50,
        ..cfg(7)
    }))
}

fn fixed_values() -> Result<String, String> {
    let rational = |n: i64, d: i64| Cyclotomic::from_rational(BigRational::new(n.into(), d.into()));
    let mut checked = 0;
    for m in 1..=8u32 {
        let w = Arc::new(omega_l(m, Level::new(0, m).unwrap()));
        let sphere: SeifertData = "g=0;(1,1)".parse().unwrap();
        let z = dw_formula_for(Arc::clone(&w), &sphere)
            .map_err(|e| e.to_string())?
            .value;
        if z != rational(1, m as i64) {
            return Err(format!("Z/{m}: Z(g=0;(1,1)) = {z}, expected 1/{m}"));
        }
        checked += 1;
        for g in 0..=3u32 {
            let s = SeifertData::new(g, vec![]).unwrap();
            let z = dw_formula_for(Arc::clone(&w), &s).map_err(|e| e.to_string())?.value;
            if z != Cyclotomic::from_integer((m as i64).pow(2 * g)) {
                return Err(format!("Z/{m}: Z(g={g};) = {z}, expected {m}^{}", 2 * g));
            }
            checked += 1;
        }
    }
    let s: SeifertData = "g=0;(1,1),(1,2)".parse().unwrap();
    let want =
        (Cyclotomic::one() + Cyclotomic::from_root(3, 2).scale_int(2)).scale(&BigRational::new(1.into(), 3.into()));
    let direct = dw_formula_for(Arc::new(omega_l(3, Level::new(1, 3).unwrap())), &s)
        .map_err(|e| e.to_string())?
        .value;
    let closed = dw_prime_closed_form(3, Level::new(1, 3).unwrap(), &s)
        .map_err(|e| e.to_string())?
        .value;
    if direct != want || closed != want {
        return Err(format!(
            "Z/3 l=1 (1,1),(1,2): formula {direct}, closed form {closed}, expected {want}"
        ));
    }
    Ok(format!("{} values, Z/3 l=1 (1,1),(1,2) = {direct}", checked + 1))
}

fn gauss_sums() -> Result<String, String> {
    from_report(verify::gauss_suite(&VerifyConfig {
        gauss_max_prime: 97,
        ..VerifyConfig::default()
    }))
}

fn gluing_expansion() -> Result<String, String> {
    from_report(verify::gluing_suite(&VerifyConfig {
        gluing_range: 5,
        ..cfg(8)
    }))
}

fn restriction_level() -> Result<String, String> {
    from_report(verify::restriction_suite(&VerifyConfig {
        perturbations: 500,
        ..cfg(12)
    }))
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        name: "omega_l is a normalized 3-cocycle, m <= 12, all l",
        limit: Some(Duration::from_secs(30)),
        run: cocycle_validity,
    },
    Criterion {
        name: "kappa closed form equals the cycle product, m <= 10, |a|,|b| <= 12",
        limit: Some(Duration::from_secs(120)),
        run: kappa_equivalence,
    },
    Criterion {
        name: "characters are orthonormal, m <= 12, all l",
        limit: None,
        run: orthonormality,
    },
    Criterion {
        name: "fusion rule of the S-inverse basis, m <= 8, all l",
        limit: None,
        run: fusion,
    },
    Criterion {
        name: "untwisted formula equals homomorphism counting, abelian groups of order <= 16",
        limit: Some(Duration::from_secs(300)),
        run: untwisted_formula_vs_counting,
    },
    Criterion {
        name: "prime closed form equals the character formula, p in {3,5,7}",
        limit: Some(Duration::from_secs(300)),
        run: prime_closed_form,
    },
    Criterion {
        name: "fixed values: 1/m, m^(2g), (1+2*E(3)^2)/3",
        limit: None,
        run: fixed_values,
    },
    Criterion {
        name: "Gauss sums: |S_p(a)|^2 = p and S_p(a) = (a/p) S_p(1), p <= 97",
        limit: Some(Duration::from_secs(30)),
        run: gauss_sums,
    },
    Criterion {
        name: "glued solid torus expands as eta/#G, completion independent, m <= 8",
        limit: None,
        run: gluing_expansion,
    },
    Criterion {
        name: "restriction level: l at the generator, invariant under 500 coboundaries",
        limit: None,
        run: restriction_level,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("acceptance {:>2} {verdict} [{elapsed:.2?}] {}: {detail}", i + 1, c.name);
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
