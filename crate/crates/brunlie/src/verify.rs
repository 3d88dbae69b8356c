//! Seeded property checks behind `brunlie verify` and the acceptance run.
//!
//! Each check returns a [`Verdict`]: a pass flag, a one-line summary and a
//! JSON detail object that embeds the parameters (seed included) and the
//! first few defects when something fails.

use brunlie_core::braids::{self, BraidWord};
use brunlie_core::dkho::SubspaceCache;
use brunlie_core::dmr::{self, LambdaRule};
use brunlie_core::emergent::{self, Variant};
use brunlie_core::krv::{self, SpanConvention, TangentialDerivation};
use brunlie_core::pentagon::{self, PentFlavor};
use brunlie_core::sample;
use brunlie_core::Result;
use rand::Rng;
use serde_json::{json, Value};

use crate::json;

/// Defects beyond this many are counted but not printed.
const SHOWN: usize = 3;

#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: &'static str,
    pub pass: bool,
    pub summary: String,
    pub detail: Value,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({ "theorem": self.name, "pass": self.pass, "summary": self.summary, "detail": self.detail })
    }
}

struct Failures(Vec<Value>, usize);

impl Failures {
    fn new() -> Self {
        Failures(Vec::new(), 0)
    }
    fn push(&mut self, v: impl FnOnce() -> Value) {
        if self.0.len() < SHOWN {
            self.0.push(v());
        }
        self.1 += 1;
    }
    fn count(&self) -> usize {
        self.1
    }
    fn json(self) -> Value {
        Value::Array(self.0)
    }
}

fn degree_in<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi.max(lo))
}

/// `pent(φ(t12, t23))` lies in every `ker pr^i_4` for random Lie `φ`.
pub fn kernel_lemma(samples: usize, max_degree: usize, seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let mut fails = Failures::new();
    for _ in 0..samples {
        let d = degree_in(&mut rng, 2, max_degree);
        let phi = sample::lie(&mut rng, 2, d);
        let g = pentagon::pent_phi(&phi);
        for i in 1..=4 {
            let r = g.delete_strand(i)?;
            if !r.is_zero() {
                fails.push(
                    || json!({ "phi": json::lie(&phi), "strand": i, "image": json::combed(&r) }),
                );
            }
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "kernel",
        pass: n == 0,
        summary: format!(
            "{} samples, degrees 2..={}, {} nonzero deletions",
            samples, max_degree, n
        ),
        detail: json!({ "seed": seed, "samples": samples, "max_degree": max_degree, "failures": n, "examples": fails.json() }),
    })
}

/// `Sol(pent^1_dmr) = Sol(dmr_0)` as subspaces, weights `3..=max_weight`.
pub fn dmr_equivalence(max_weight: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut dims = Vec::new();
    for w in 3..=max_weight {
        let a = pentagon::pent_k_space(w, PentFlavor::Dmr, 1, cache)?;
        let b = dmr::dmr0_space(w)?;
        let eq = a.same_span(&b);
        pass &= eq;
        dims.push(format!("{}", b.dim()));
        rows.push(
            json!({ "weight": w, "dim_pent1_dmr": a.dim(), "dim_dmr0": b.dim(), "equal": eq }),
        );
    }
    Ok(Verdict {
        name: "dmr",
        pass,
        summary: format!("weights 3..={}, dims [{}]", max_weight, dims.join(", ")),
        detail: json!({ "max_weight": max_weight, "rows": rows }),
    })
}

/// The algebraic route for `La∘pent^1_krv` matches the closed form.
pub fn route_equality(
    samples: usize,
    max_degree: usize,
    seed: u64,
    cache: &mut SubspaceCache,
) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let mut fails = Failures::new();
    for _ in 0..samples {
        let d = degree_in(&mut rng, 2, max_degree);
        let psi = sample::lie(&mut rng, 2, d);
        for v in [Variant::T13T23, Variant::T12T23] {
            let route =
                emergent::closed_identification(&emergent::pent1_krv_route(&psi, v, cache)?);
            let closed = emergent::pent1_krv_closed(&psi, v)?;
            if route != closed {
                fails.push(|| json!({ "psi": json::lie(&psi), "variant": format!("{:?}", v), "difference": json::ncpoly(&(&route - &closed)) }));
            }
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "pent-j",
        pass: n == 0,
        summary: format!(
            "{} samples, degrees 2..={}, both variants, {} mismatches",
            samples, max_degree, n
        ),
        detail: json!({ "seed": seed, "samples": samples, "max_degree": max_degree, "failures": n, "examples": fails.json() }),
    })
}

/// Both composites of the stuffle-coproduct square agree.
pub fn shuffle_coproduct(samples: usize, max_degree: usize, seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let mut fails = Failures::new();
    for d in 3..=max_degree {
        for _ in 0..samples {
            let psi = sample::lie(&mut rng, 2, d);
            let r = dmr::dmr_diagram_check(&psi, LambdaRule::Surjection)?;
            if !r.commutes() {
                fails.push(
                    || json!({ "psi": json::lie(&psi), "mismatch": json::p_space(&r.mismatch()) }),
                );
            }
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "shuffle-coproduct",
        pass: n == 0,
        summary: format!(
            "{} samples per degree 3..={}, {} mismatches",
            samples, max_degree, n
        ),
        detail: json!({ "seed": seed, "samples": samples, "max_degree": max_degree, "lambda": "surjection", "failures": n, "examples": fails.json() }),
    })
}

/// `div(H(|a|)) = (1/(m−1))|μ(N(|a|))|` on every cyclic word of degree `2..=max_degree`.
pub fn div_mu(max_degree: usize) -> Result<Verdict> {
    let mut fails = Failures::new();
    let mut words = 0;
    for d in 2..=max_degree {
        for w in krv::cyclic_words(d) {
            words += 1;
            if !krv::div_mu_check(&w)? {
                let (l, r) = krv::div_mu_sides(&w)?;
                fails.push(|| json!({ "word": w, "left": json::cyclic(&l, 2), "right": json::cyclic(&r, 2) }));
            }
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "div-mu",
        pass: n == 0,
        summary: format!(
            "{} cyclic words, degrees 2..={}, {} failures",
            words, max_degree, n
        ),
        detail: json!({ "max_degree": max_degree, "words": words, "failures": n, "examples": fails.json() }),
    })
}

fn random_tangential<R: Rng>(rng: &mut R, max_degree: usize) -> Result<TangentialDerivation> {
    let d = degree_in(rng, 1, max_degree);
    TangentialDerivation::from_lie(&sample::lie(rng, 2, d), &sample::lie(rng, 2, d))
}

/// `div([u,v]) = u·div(v) − v·div(u)` on random tangential pairs.
pub fn div_cocycle(samples: usize, max_degree: usize, seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let mut fails = Failures::new();
    for _ in 0..samples {
        let u = random_tangential(&mut rng, max_degree)?;
        let v = random_tangential(&mut rng, max_degree)?;
        let def = krv::cocycle_defect(&u, &v);
        if !def.is_zero() {
            fails.push(|| json!({ "u": json::derivation(&u), "v": json::derivation(&v), "defect": json::cyclic(&def, 2) }));
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "cocycle",
        pass: n == 0,
        summary: format!(
            "{} pairs, degrees ≤ {}, {} failures",
            samples, max_degree, n
        ),
        detail: json!({ "seed": seed, "samples": samples, "max_degree": max_degree, "failures": n, "examples": fails.json() }),
    })
}

/// `(1/m)|p̃ent_sym(ψ)| = div(sd(ψ))` on a basis of the special `sd`-preimages.
pub fn middle_square(max_degree: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let mut fails = Failures::new();
    let mut rows = Vec::new();
    let mut checked = 0;
    for m in 3..=max_degree {
        let space = krv::sd_special_space(m)?;
        for psi in space.elements() {
            checked += 1;
            let def = emergent::middle_square_defect(&psi, cache)?;
            if !def.is_zero() {
                fails.push(|| json!({ "psi": json::lie(&psi), "defect": json::cyclic(&def, 2) }));
            }
        }
        rows.push(json!({ "degree": m, "basis_size": space.dim() }));
    }
    let n = fails.count();
    Ok(Verdict {
        name: "krv-commutative",
        pass: n == 0,
        summary: format!(
            "{} basis elements, degrees 3..={}, {} failures",
            checked, max_degree, n
        ),
        detail: json!({ "max_degree": max_degree, "rows": rows, "failures": n, "examples": fails.json() }),
    })
}

fn krv_rows(max_weight: usize, cache: &mut SubspaceCache) -> Result<Vec<emergent::KrvAuditRow>> {
    (3..=max_weight)
        .map(|w| emergent::krv_equivalence_audit(w, cache))
        .collect()
}

/// A single span convention under which `A = B` at every weight.
fn common_convention(
    rows: &[emergent::KrvAuditRow],
    need: impl Fn(&emergent::KrvAuditRow, usize) -> bool,
) -> Option<SpanConvention> {
    (0..SpanConvention::ALL.len())
        .find(|&i| rows.iter().all(|r| need(r, i)))
        .map(|i| SpanConvention::ALL[i])
}

/// Solutions of the speciality equation with `pent^1_krv = 0` versus the
/// `krv^sym` membership space, per weight.
pub fn krv_equivalence(max_weight: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let rows = krv_rows(max_weight, cache)?;
    let conv = common_convention(&rows, |r, i| r.equal[i]);
    let dims: Vec<String> = rows.iter().map(|r| r.dim_a.to_string()).collect();
    Ok(Verdict {
        name: "krv",
        pass: conv.is_some(),
        summary: format!(
            "weights 3..={}, dims [{}], convention: {}",
            max_weight,
            dims.join(", "),
            conv.map(|c| c.name()).unwrap_or("none")
        ),
        detail: json!({
            "max_weight": max_weight,
            "convention": conv.map(|c| c.name()).unwrap_or("none"),
            "rows": rows.iter().map(json::krv_audit_row).collect::<Vec<_>>(),
        }),
    })
}

/// `Sol(dmr_0) ∩ Sol(speciality) ⊆ krv^sym`, per weight.
pub fn corollary(max_weight: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let rows = krv_rows(max_weight, cache)?;
    let conv = common_convention(&rows, |r, i| r.contained[i]);
    Ok(Verdict {
        name: "corollary",
        pass: conv.is_some(),
        summary: format!(
            "weights 3..={}, convention: {}",
            max_weight,
            conv.map(|c| c.name()).unwrap_or("none")
        ),
        detail: json!({
            "max_weight": max_weight,
            "convention": conv.map(|c| c.name()).unwrap_or("none"),
            "rows": rows.iter().map(|r| json!({ "weight": r.weight, "dimC": r.dim_c, "contained": r.contained })).collect::<Vec<_>>(),
        }),
    })
}

/// The containment chain between the three `pent^k` flavors.
pub fn relations(max_weight: usize, max_k: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let rows = pentagon::implication_audit(max_weight, max_k, cache)?;
    let bad: Vec<Value> = rows
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.1)
                .map(move |c| json!({ "weight": r.weight, "k": r.k, "claim": c.0 }))
        })
        .collect();
    let total: usize = rows.iter().map(|r| r.checks.len()).sum();
    Ok(Verdict {
        name: "relations",
        pass: bad.is_empty(),
        summary: format!(
            "weights 2..={}, k ≤ {}, {}/{} inclusions hold",
            max_weight,
            max_k,
            total - bad.len(),
            total
        ),
        detail: json!({ "max_weight": max_weight, "max_k": max_k, "table": json::audit_rows(&rows), "failed": bad }),
    })
}

/// `φ(−x−y, x)` is primitive for `φ` spanning `Sol(pent^1_krv)`.
pub fn quotient(max_weight: usize, cache: &mut SubspaceCache) -> Result<Verdict> {
    let mut fails = Failures::new();
    let mut checked = 0;
    for w in 2..=max_weight {
        for phi in emergent::pent1_krv_space(w, cache)?.elements() {
            checked += 1;
            let def = emergent::quotient_defect(&phi.to_ncpoly())?;
            if !def.is_zero() {
                fails.push(|| json!({ "phi": json::lie(&phi), "defect": json::tensor(&def, 2) }));
            }
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "kv-right",
        pass: n == 0,
        summary: format!(
            "{} solutions, weights 2..={}, {} failures",
            checked, max_weight, n
        ),
        detail: json!({ "max_weight": max_weight, "checked": checked, "failures": n, "examples": fails.json() }),
    })
}

/// A pure 3-braid of at most `max_len` crossings built from pure generators.
fn short_pure_braid<R: Rng>(rng: &mut R, max_len: usize) -> BraidWord {
    loop {
        let k = rng.gen_range(1..=(max_len / 2).max(1));
        let b = sample::pure_braid(rng, 3, k);
        if b.len() <= max_len {
            return b;
        }
    }
}

fn triviality_rows(
    phis: &[BraidWord],
    truncation: usize,
    cache: &mut SubspaceCache,
) -> Result<(usize, usize, usize, Vec<Value>)> {
    let (mut brunnian, mut in_kernels, mut in_brun) = (0, 0, 0);
    let mut rows = Vec::new();
    for phi in phis {
        let pent = braids::pent_braid(phi)?;
        let b = braids::is_brunnian(&pent, None)?;
        let mut row = json!({ "phi": phi.to_string(), "brunnian": b });
        if b {
            brunnian += 1;
            let r = braids::n_triviality_report(phi, truncation, 0, cache)?;
            in_kernels += r.in_deletion_kernels as usize;
            in_brun += r.in_brun as usize;
            row["leading_degree"] = json!(r.leading_degree);
            row["in_deletion_kernels"] = json!(r.in_deletion_kernels);
            row["in_brun"] = json!(r.in_brun);
        }
        rows.push(row);
    }
    Ok((brunnian, in_kernels, in_brun, rows))
}

/// `Pent(Φ)` is Brunnian for random pure 3-braids, and the leading Magnus
/// term lies in the deletion kernels whenever it is. A second pass over
/// products of commutators exercises the Magnus side on Brunnian inputs.
pub fn brunnian_magnus(
    samples: usize,
    max_len: usize,
    truncation: usize,
    seed: u64,
    cache: &mut SubspaceCache,
) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let random: Vec<BraidWord> = (0..samples)
        .map(|_| short_pure_braid(&mut rng, max_len))
        .collect();
    let (b, k, br, rows) = triviality_rows(&random, truncation, cache)?;
    let balanced: Vec<BraidWord> = (0..samples.min(10))
        .map(|_| sample::balanced_pure_braid(&mut rng, 3, 1))
        .collect();
    let (bb, bk, bbr, brows) = triviality_rows(&balanced, truncation, cache)?;
    let pass = b == samples && k == b && br == b;
    Ok(Verdict {
        name: "brunnian-magnus",
        pass,
        summary: format!(
            "random Φ: {}/{} Pent(Φ) Brunnian, kernels {}/{}; commutator Φ: {}/{} Brunnian, kernels {}/{}",
            b,
            samples,
            k,
            b,
            bb,
            balanced.len(),
            bk,
            bb
        ),
        detail: json!({
            "seed": seed,
            "truncation": truncation,
            "max_len": max_len,
            "random": { "samples": samples, "brunnian": b, "in_kernels": k, "in_brun": br, "rows": rows },
            "commutators": { "samples": balanced.len(), "brunnian": bb, "in_kernels": bk, "in_brun": bbr, "rows": brows },
        }),
    })
}

/// `d_0(ab) = d_0(a) + {}^a d_0(b)` on sampled pure 3-braids and free words.
pub fn johnson_cocycle(samples: usize, truncation: usize, seed: u64) -> Result<Verdict> {
    let mut rng = sample::rng(seed);
    let mut fails = Failures::new();
    for _ in 0..samples {
        let g = if rng.gen_bool(0.5) {
            sample::pure_braid(&mut rng, 3, 2)
        } else {
            sample::balanced_pure_braid(&mut rng, 3, 1)
        };
        let a = sample::free_word(&mut rng, 3, 4);
        let b = sample::free_word(&mut rng, 3, 4);
        let def = braids::cocycle_defect(&g, &a, &b, truncation)?;
        if !def.is_zero() {
            fails.push(|| json!({ "g": json::braid(&g), "a": json::free_word(&a), "b": json::free_word(&b), "defect": json::ncpoly(&def) }));
        }
    }
    let n = fails.count();
    Ok(Verdict {
        name: "johnson-cocycle",
        pass: n == 0,
        summary: format!(
            "{} pairs, truncation {}, {} failures",
            samples, truncation, n
        ),
        detail: json!({ "seed": seed, "samples": samples, "truncation": truncation, "failures": n, "examples": fails.json() }),
    })
}

/// The theorem names `verify` accepts.
pub const THEOREMS: [&str; 13] = [
    "kernel",
    "relations",
    "dmr",
    "shuffle-coproduct",
    "div-mu",
    "cocycle",
    "krv-commutative",
    "krv",
    "corollary",
    "kv-right",
    "pent-j",
    "brunnian-magnus",
    "johnson-cocycle",
];
