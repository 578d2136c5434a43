//! The acceptance suite over a corpus directory: one report per criterion.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::coeff::{EmbedTarget, Exponent, Poly, ReesElement, Var, Variant};
use crate::diagram::{Move, PlanarDiagram};
use crate::formal::{FormalCalculus, GroupoidPresentation, Membership};
use crate::framed::{
    framed_expand, framing_normal_form, specialize_v_to_one, torus_decomposition, TorusData,
    TotallyFramedLink,
};
use crate::homotopy::{model_link, ModelMonomial};
use crate::jonesq::{a_q_eval, a_q_functorial, a_q_running, i_q, p_q, random_word, Normalization};
use crate::link::Presentation;
use crate::loops::{make_canonical_loop, random_loop, LoopKind, TransversalLoop};
use crate::skein::{
    self, iota_beta, naive_resolve, presentation_key, unordered, Engine, Expanded, Mode,
    PotentialSpec, VassilievEngine, VassilievForm,
};

/// Criteria expected to fail; see the notes printed with them.
pub const KNOWN_UNATTAINABLE: &[u8] = &[8];

#[derive(Debug, Error)]
#[error("{}: {message}", file.display())]
pub struct CorpusError {
    pub file: PathBuf,
    pub message: String,
}

/// Links, groupoids and torus data the suite runs over.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub diagrams: Vec<(String, PlanarDiagram)>,
    pub braids: Vec<(String, BraidWord)>,
    pub groupoids: Vec<(String, GroupoidPresentation)>,
    pub torus: TorusData,
}

fn read(file: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(file).map_err(|e| CorpusError {
        file: file.to_path_buf(),
        message: e.to_string(),
    })
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let rd = std::fs::read_dir(dir).map_err(|e| CorpusError {
        file: dir.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut out: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

impl Corpus {
    /// The corpus shipped with the repository.
    pub fn default_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
    }

    pub fn load(dir: &Path) -> Result<Corpus, CorpusError> {
        let bad = |file: &Path, message: String| CorpusError {
            file: file.to_path_buf(),
            message,
        };
        let mut diagrams = Vec::new();
        for f in json_files(&dir.join("diagrams"))? {
            let d = PlanarDiagram::from_json(&read(&f)?).map_err(|e| bad(&f, e.to_string()))?;
            diagrams.push((stem(&f), d));
        }
        let mut braids = Vec::new();
        let bf = dir.join("braids.txt");
        for (k, line) in read(&bf)?.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let w: BraidWord = line
                .parse()
                .map_err(|e| bad(&bf, format!("line {}: {}", k + 1, e)))?;
            braids.push((line.trim().to_string(), w));
        }
        let mut groupoids = Vec::new();
        for f in json_files(&dir.join("groupoids"))? {
            let p =
                GroupoidPresentation::from_json(&read(&f)?).map_err(|e| bad(&f, e.to_string()))?;
            p.validate().map_err(|e| bad(&f, e.to_string()))?;
            groupoids.push((stem(&f), p));
        }
        let tf = dir.join("torus.json");
        let torus = TorusData::from_json(&read(&tf)?).map_err(|e| bad(&tf, e.to_string()))?;
        Ok(Corpus {
            diagrams,
            braids,
            groupoids,
            torus,
        })
    }

    /// Every link of the corpus, disk diagrams first.
    pub fn entries(&self) -> Vec<(String, Presentation)> {
        let d = self
            .diagrams
            .iter()
            .map(|(n, d)| (n.clone(), Presentation::Disk(d.clone())));
        let b = self
            .braids
            .iter()
            .map(|(n, w)| (n.clone(), Presentation::Annulus(w.clone())));
        d.chain(b).collect()
    }

    pub fn regular_entries(&self) -> Vec<(String, Presentation)> {
        self.entries()
            .into_iter()
            .filter(|(_, x)| x.singular_count() == 0)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit: f64,
}

impl CriterionReport {
    pub fn known_unattainable(&self) -> bool {
        KNOWN_UNATTAINABLE.contains(&self.id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "criterion": self.id,
            "title": self.title,
            "pass": self.passed,
            "seconds": (self.seconds * 1000.0).round() / 1000.0,
            "limit_seconds": self.limit,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} [{:.2}s / {}s] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.limit,
            self.title,
            self.detail
        )
    }
}

pub const ALL: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Criterion ids of a named scope.
pub fn scope_ids(scope: &str) -> Result<Vec<u8>, String> {
    Ok(match scope {
        "all" => ALL.to_vec(),
        "values" => vec![1, 2],
        "invariance" => vec![3, 4],
        "models" => vec![5],
        "loops" => vec![6, 7],
        "jones" => vec![8],
        "formal" => vec![9],
        "rees" => vec![10],
        "framed" => vec![11],
        "vassiliev" => vec![12],
        other => {
            let ids: Result<Vec<u8>, _> =
                other.split(',').map(|s| s.trim().parse::<u8>()).collect();
            match ids {
                Ok(v) if !v.is_empty() && v.iter().all(|i| ALL.contains(i)) => v,
                _ => return Err(format!("unknown scope {:?}", other)),
            }
        }
    })
}

pub fn run(corpus: &Corpus, ids: &[u8], seed: u64) -> Vec<CriterionReport> {
    ids.iter().map(|&id| run_one(corpus, id, seed)).collect()
}

pub fn run_one(corpus: &Corpus, id: u8, seed: u64) -> CriterionReport {
    let (title, limit): (&'static str, f64) = match id {
        1 => ("exact disk values", 1.0),
        2 => ("annulus values", 1.0),
        3 => ("isotopy and Markov invariance", 60.0),
        4 => ("path independence against naive resolution", 120.0),
        5 => ("model and projection laws", 30.0),
        6 => ("loop consistency", 120.0),
        7 => ("mu of kink loops", 60.0),
        8 => ("Jones deformation", 10.0),
        9 => ("formal expansions are well defined", 60.0),
        10 => ("Rees arithmetic", 5.0),
        11 => ("framed laws", 60.0),
        12 => ("Vassiliev consistency and two-path lin", 120.0),
        _ => ("unknown", 0.0),
    };
    let t = Instant::now();
    let (ok, detail) = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(corpus, seed),
        4 => c4(corpus, seed),
        5 => c5(),
        6 => c6(corpus, seed),
        7 => c7(corpus),
        8 => c8(corpus, seed),
        9 => c9(corpus, seed),
        10 => c10(seed),
        11 => c11(corpus),
        12 => c12(corpus, seed),
        _ => (false, "no such criterion".into()),
    };
    let seconds = t.elapsed().as_secs_f64();
    let passed = ok && seconds <= limit;
    let detail = if ok && !passed {
        format!("{} (over time)", detail)
    } else {
        detail
    };
    CriterionReport {
        id,
        title,
        passed,
        detail,
        seconds,
        limit,
    }
}

type Outcome = (bool, String);

fn oriented() -> Engine {
    Engine::new(PotentialSpec::default()).expect("default potential")
}

fn rees(s: &str) -> ReesElement {
    ReesElement::parse(Variant::Oriented, s).expect("literal")
}

fn c1() -> Outcome {
    let eng = oriented();
    let at = |d: PlanarDiagram| {
        let x = Presentation::Disk(d);
        let e = eng.expand(&x).expect("expands");
        let n =
            match naive_resolve(&x, &PotentialSpec::default(), Mode::Exact, 1).expect("resolves") {
                Expanded::Exact(n) => n,
                _ => unreachable!("exact mode"),
            };
        (
            iota_beta(&e, &ModelMonomial::trivial(), Variant::Oriented),
            e == n && e.len() == 1,
        )
    };
    let (u, a) = at(PlanarDiagram::unknot());
    let (h, b) = at(PlanarDiagram::hopf_positive());
    let (t, c) = at(PlanarDiagram::trefoil_right());
    let zh = ReesElement::normalize(Variant::Oriented, &t.poly().substitute(Var::Z, &Poly::h()));
    let checks = [
        u == rees("u"),
        h == rees("q^2*u^2 + q*z*u"),
        t == rees("q^2*u + q^3*h*u^2 + q^2*h*z*u"),
        zh == &rees("2*q^2 - q^4 + q^2*h^2") * &rees("u"),
        a && b && c,
    ];
    let ok = checks.iter().all(|&x| x);
    (
        ok,
        format!(
            "unknot {}, Hopf {}, trefoil {}; {}/5 checks",
            u,
            h,
            t,
            checks.iter().filter(|&&x| x).count()
        ),
    )
}

fn c2() -> Outcome {
    let eng = oriented();
    let e = |s: &str| {
        eng.expand(&Presentation::Annulus(s.parse().expect("literal")))
            .expect("expands")
    };
    let m = |s: &str| s.parse::<ModelMonomial>().expect("literal");
    let a = e("B2: -s1");
    let b = e("B2: s1 s1");
    let ok = a.len() == 2
        && a.get(&m("[2]")) == Some(&rees("q^-2"))
        && a.get(&m("[1,1]")) == Some(&rees("-q^-1*h"))
        && b.len() == 2
        && b.get(&m("[1,1]")) == Some(&rees("q^2"))
        && b.get(&m("[2]")) == Some(&rees("q*z"));
    (ok, format!("closure(-s1) = {}; closure(s1 s1) = {}", a, b))
}

fn random_moves(
    d: &PlanarDiagram,
    rng: &mut ChaCha8Rng,
    steps: usize,
    cap: usize,
) -> PlanarDiagram {
    let mut e = d.clone();
    for _ in 0..steps {
        let ms = e.applicable_moves();
        let Some(m) = ms.choose(rng) else { break };
        let next = e.apply_move(m).expect("applicable");
        if next.crossing_count() <= cap {
            e = next;
        }
    }
    e
}

fn random_braid(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_strands);
    let len = rng.gen_range(1..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.6) { 1 } else { -1 })
        .collect();
    BraidWord::from_signed(n, &letters).expect("valid generators")
}

fn c3(corpus: &Corpus, seed: u64) -> Outcome {
    let eng = oriented();
    let diagrams: Vec<&PlanarDiagram> = corpus
        .diagrams
        .iter()
        .map(|(_, d)| d)
        .filter(|d| d.crossing_count() <= 6)
        .collect();
    let jobs: Vec<(usize, u64)> = (0..30.max(3 * diagrams.len()))
        .map(|k| (k % diagrams.len(), seed ^ k as u64))
        .collect();
    let planar_bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(i, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let steps = rng.gen_range(1..=10);
            let d = diagrams[i];
            let e = random_moves(d, &mut rng, steps, d.crossing_count() + 4);
            let a = eng.expand(&Presentation::Disk(d.clone())).ok()?;
            let b = eng.expand(&Presentation::Disk(e)).ok()?;
            (a != b).then(|| format!("diagram {} seed {}", i, s))
        })
        .collect();
    let markov_bad: Vec<String> = (0..200u64)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(7919) ^ (k + 1));
            let w = random_braid(&mut rng, 5, 12);
            let mut v = w.clone();
            for _ in 0..rng.gen_range(1..=3) {
                let moves = v.closure_preserving_moves();
                if let Some(&m) = moves.choose(&mut rng) {
                    v = v.markov_move(m).expect("applicable");
                }
            }
            let a = eng.expand(&Presentation::Annulus(w.clone())).ok()?;
            let b = eng.expand(&Presentation::Annulus(v.clone())).ok()?;
            (a != b).then(|| format!("{} vs {}", w, v))
        })
        .collect();
    let ok = planar_bad.is_empty() && markov_bad.is_empty();
    let mut detail = format!("{} planar pairs, 200 Markov-perturbed braids", jobs.len());
    if !ok {
        detail += &format!(
            "; mismatches: {}",
            planar_bad.iter().chain(&markov_bad).take(3).join("; ")
        );
    }
    (ok, detail)
}

fn size(x: &Presentation) -> usize {
    match x {
        Presentation::Disk(d) => d.crossing_count(),
        Presentation::Annulus(w) => w.len(),
    }
}

fn c4(corpus: &Corpus, seed: u64) -> Outcome {
    let eng = oriented();
    let entries: Vec<(String, Presentation)> = corpus
        .entries()
        .into_iter()
        .filter(|(_, x)| size(x) <= 8)
        .collect();
    let bad: Vec<String> = entries
        .par_iter()
        .flat_map(|(name, x)| {
            let want = eng.expand(x).expect("corpus expands");
            (0..50u64)
                .filter_map(|k| {
                    let got =
                        naive_resolve(x, eng.potential(), Mode::Exact, seed.wrapping_add(k)).ok();
                    match got {
                        Some(Expanded::Exact(e)) if e == want => None,
                        _ => Some(format!("{} seed {}", name, k)),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let detail = format!(
        "{} entries x 50 seeds, {} mismatches",
        entries.len(),
        bad.len()
    );
    (
        bad.is_empty(),
        if bad.is_empty() {
            detail
        } else {
            format!("{}: {}", detail, bad.iter().take(3).join("; "))
        },
    )
}

fn c5() -> Outcome {
    let eng = oriented();
    let all = ModelMonomial::enumerate(4, 3);
    let bad: Vec<String> = all
        .par_iter()
        .filter_map(|b| {
            let e = eng.expand(&model_link(b).ok()?).ok()?;
            let fixed = e.len() == 1 && e.get(b).is_some_and(|c| c.is_one());
            let proj = all.iter().all(|b2| {
                let v = iota_beta(&e, b2, Variant::Oriented);
                if b == b2 {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            });
            (!(fixed && proj)).then(|| b.to_string())
        })
        .collect();
    (
        bad.is_empty(),
        format!(
            "{} monomials, {} pairs, failures: [{}]",
            all.len(),
            all.len() * all.len(),
            bad.join(", ")
        ),
    )
}

/// Kink loops on every component, differentiability loops on every pair of
/// regular sites, stabilized kinks on braids, and random loops.
pub fn corpus_loops(corpus: &Corpus, seed: u64, random: usize) -> Vec<(String, TransversalLoop)> {
    let mut out = Vec::new();
    let entries = corpus.regular_entries();
    for (name, x) in &entries {
        for c in 0..x.component_count() {
            for sign in [1i8, -1] {
                if let Ok(l) = make_canonical_loop(x, &LoopKind::Kink { sign, component: c }) {
                    out.push((format!("{} kink {}{}", name, c, sign), l));
                }
            }
        }
        let sites = regular_sites(x);
        for (a, b) in sites.iter().tuple_combinations() {
            if let Ok(l) = make_canonical_loop(x, &LoopKind::Differentiability { a: *a, b: *b }) {
                out.push((format!("{} diff {} {}", name, a, b), l));
            }
        }
        if x.as_annulus().is_some() {
            for sign in [1i8, -1] {
                if let Ok(l) = make_canonical_loop(x, &LoopKind::StabilizedKink { sign }) {
                    out.push((format!("{} stabilized kink {}", name, sign), l));
                }
            }
        }
    }
    let extra: Vec<(String, TransversalLoop)> = (0..random)
        .into_par_iter()
        .filter_map(|k| {
            let (name, x) = &entries[k % entries.len()];
            if size(x) > 6 {
                return None;
            }
            let s = seed.wrapping_add(1000 + k as u64);
            random_loop(x, s)
                .ok()
                .map(|l| (format!("{} random {}", name, s), l))
        })
        .collect();
    out.extend(extra);
    out
}

fn regular_sites(x: &Presentation) -> Vec<usize> {
    match x {
        Presentation::Disk(d) => d
            .crossings()
            .iter()
            .map(|c| c.id)
            .filter(|&i| !d.is_singular(i))
            .collect(),
        Presentation::Annulus(w) => (0..w.len()).filter(|&p| !w.is_singular(p)).collect(),
    }
}

fn c6(corpus: &Corpus, seed: u64) -> Outcome {
    let loops = corpus_loops(corpus, seed, 60);
    let pot = PotentialSpec::default();
    let bad: Vec<String> = loops
        .par_iter()
        .filter_map(|(name, l)| match l.skein_consistency(&pot) {
            Ok(e) if e.is_zero() => None,
            Ok(e) => Some(format!("{} leaves {}", name, e)),
            Err(e) => Some(format!("{}: {}", name, e)),
        })
        .collect();
    let kinds = |k: &str| loops.iter().filter(|(n, _)| n.contains(k)).count();
    let detail = format!(
        "{} loops ({} kink, {} differentiability, {} random), {} nonzero",
        loops.len(),
        kinds("kink"),
        kinds("diff"),
        kinds("random"),
        bad.len()
    );
    let ok = bad.is_empty() && loops.len() >= 100;
    (
        ok,
        if bad.is_empty() {
            detail
        } else {
            format!("{}: {}", detail, bad.iter().take(2).join("; "))
        },
    )
}

/// The marked kink built directly: a curl of sign `sign` inserted and
/// marked.
fn marked_kink(x: &Presentation, component: usize, sign: i8) -> Option<Presentation> {
    match x {
        Presentation::Disk(d) => {
            let edge = *d.components().get(component)?.first()?;
            let id = d.next_crossing_id();
            let e = d
                .apply_move(&Move::R1Insert {
                    edge,
                    sign,
                    over_first: true,
                })
                .ok()?;
            Some(Presentation::Disk(e.mark_singular(id).ok()?))
        }
        Presentation::Annulus(w) => {
            let strand = *w.closure_structure().cycles.get(component)?.first()?;
            let mut letters = vec![Letter::Curl { curl: strand, sign }];
            letters.extend(w.letters.iter().copied());
            let y = Presentation::Annulus(BraidWord {
                strands: w.strands,
                letters,
                singular: Vec::new(),
            });
            skein::marked(&y, 0).ok()
        }
    }
}

fn c7(corpus: &Corpus) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (name, x) in corpus.regular_entries() {
        for c in 0..x.component_count() {
            for sign in [1i8, -1] {
                count += 1;
                let ok = (|| {
                    let l = make_canonical_loop(&x, &LoopKind::Kink { sign, component: c }).ok()?;
                    let mu = l.mu().ok()?;
                    let want = marked_kink(&x, c, sign)?;
                    let (coeff, got) = mu.terms().exactly_one().ok()?;
                    let unit = ReesElement::one(Variant::Oriented).scale(&(sign as i64).into());
                    Some(*coeff == unit && presentation_key(got) == presentation_key(&want))
                })();
                if ok != Some(true) {
                    bad.push(format!("{} component {} sign {}", name, c, sign));
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{} kink loops, failures: [{}]", count, bad.join(", ")),
    )
}

fn c8(corpus: &Corpus, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut id_ok, mut lit_src, mut lit_mid, mut run_mid, mut total) = (0, 0, 0, 0, 0);
    let gs: Vec<&GroupoidPresentation> = corpus.groupoids.iter().map(|(_, p)| p).collect();
    if gs.is_empty() {
        return (false, "no groupoids in the corpus".into());
    }
    for k in 0..200 {
        let p = gs[k % gs.len()];
        let start = &p.objects[rng.gen_range(0..p.objects.len())];
        let len = rng.gen_range(1..=6);
        let w = random_word(p, start, len, &mut rng);
        total += 1;
        let Ok(q) = i_q(p, &w) else { continue };
        id_ok += usize::from(p_q(&q) == w);
        let lit = a_q_eval(p, &w);
        let src = a_q_functorial(p, &w, Normalization::Source);
        let mid = a_q_functorial(p, &w, Normalization::Midpoint);
        lit_src += usize::from(src.as_ref().ok() == Some(&lit));
        lit_mid += usize::from(mid.as_ref().ok() == Some(&lit));
        run_mid += usize::from(mid.as_ref().ok() == Some(&a_q_running(p, &w)));
    }
    let ok = id_ok == total && lit_src == total;
    let detail = format!(
        "p_q(i_q(w)) = w on {}/{}; closed formula = functorial (source normalization) on {}/{}; \
         closed formula = functorial (midpoint) on {}/{}; formula with running powers = functorial (midpoint) on {}/{}",
        id_ok, total, lit_src, total, lit_mid, total, run_mid, total
    );
    (ok, detail)
}

fn c9(corpus: &Corpus, seed: u64) -> Outcome {
    let results: Vec<(String, usize, usize)> = corpus
        .groupoids
        .par_iter()
        .map(|(name, p)| {
            let Ok(calc) = FormalCalculus::new(p, 3, 4) else {
                return (name.clone(), 0, 1);
            };
            let mut proven = 0;
            let mut unknown = 0;
            for x in &p.objects {
                match calc.verify(x, 3, seed) {
                    Ok(vs) => {
                        for v in vs {
                            if v.status == Membership::Proven {
                                proven += 1
                            } else {
                                unknown += 1
                            }
                        }
                    }
                    Err(_) => unknown += 1,
                }
            }
            for (_, _, m) in calc.skein_relation_report() {
                if m == Membership::Proven {
                    proven += 1
                } else {
                    unknown += 1
                }
            }
            (name.clone(), proven, unknown)
        })
        .collect();
    let ok = results.len() >= 5 && results.iter().all(|r| r.2 == 0);
    let detail = results
        .iter()
        .map(|(n, p, u)| format!("{} {}/{}", n, p, p + u))
        .join(", ");
    (
        ok,
        format!(
            "{} presentations, levels 1..3, paths up to length 4: {}",
            results.len(),
            detail
        ),
    )
}

/// A random polynomial in `q^±, z, h, u`.
pub fn random_poly(rng: &mut impl Rng, terms: usize) -> Poly {
    Poly::from_terms((0..terms).map(|_| {
        let c = rng.gen_range(-4i64..=4);
        let e = Exponent {
            q: rng.gen_range(-3..=3),
            z: rng.gen_range(0..=2),
            h: rng.gen_range(0..=2),
            u: rng.gen_range(0..=2),
            v: 0,
        };
        (c.into(), e)
    }))
}

fn c10(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = Variant::Oriented;
    let rel = &Poly::monomial(
        1,
        Exponent {
            h: 1,
            u: 1,
            ..Exponent::ONE
        },
    ) - &v.vacuum();
    let mut unique = 0;
    let mut elems = Vec::new();
    for _ in 0..200 {
        let p = random_poly(&mut rng, 5);
        let r = random_poly(&mut rng, 3);
        let a = ReesElement::normalize(v, &p);
        let b = ReesElement::normalize(v, &(&p + &(&rel * &r)));
        let again = ReesElement::normalize(v, a.poly());
        unique += usize::from(a == b && a == again);
        elems.push(a);
    }
    let mut injective = true;
    for (a, b) in elems.iter().tuple_windows() {
        let same = a.embed(EmbedTarget::LaurentHInverted) == b.embed(EmbedTarget::LaurentHInverted);
        injective &= same == (a == b);
        injective &= (a - b).embed(EmbedTarget::LaurentHInverted).is_zero() == (a == b);
    }
    let vanishes = ReesElement::normalize(v, &rel).is_zero();
    let ok = unique == 200 && injective && vanishes;
    (
        ok,
        format!(
            "normal form unique on {}/200, embedding injective: {}, hu-(q^-1-q) -> 0: {}",
            unique, injective, vanishes
        ),
    )
}

fn c11(corpus: &Corpus) -> Outcome {
    let q_over_v = ReesElement::parse(Variant::Framed, "q*v^-1").expect("literal");
    let q_inv = ReesElement::parse(Variant::Framed, "q^-1").expect("literal");
    let entries = corpus.regular_entries();
    let bad: Vec<String> = entries
        .par_iter()
        .filter_map(|(name, x)| {
            let k = TotallyFramedLink::blackboard(x.clone());
            let a = framed_expand(&k).ok()?;
            let b = framed_expand(&k.plus()).ok()?;
            let exact = b == a.scaled(&q_over_v);
            let at_one = specialize_v_to_one(&b.scaled(&q_inv)) == specialize_v_to_one(&a);
            let n = framing_normal_form(3, &k);
            let idem = framing_normal_form(0, &n) == n && framing_normal_form(-1, &k.plus()) == k;
            (!(exact && at_one && idem)).then(|| name.clone())
        })
        .collect();
    let torus = torus_decomposition(&TorusData {
        classes: vec![crate::framed::TorusClass {
            monomial: vec![1],
            intersections: vec![4, 6],
            epsilon0: None,
        }],
    })
    .map(|s| s[0].quotient())
    .unwrap_or_default();
    let shipped = torus_decomposition(&corpus.torus)
        .map(|s| s.len())
        .unwrap_or(0);
    let ok = bad.is_empty() && torus == "R/(q^4-1)" && shipped == corpus.torus.classes.len();
    (
        ok,
        format!(
            "{} links: K^(+) = q v^-1 K exactly and q^-1 K^(+) = K at v = 1, normal form idempotent; \
             {{4,6}} -> {}; failures: [{}]",
            entries.len(),
            torus,
            bad.join(", ")
        ),
    )
}

fn c12(corpus: &Corpus, seed: u64) -> Outcome {
    let mut diagrams: Vec<PlanarDiagram> = corpus.diagrams.iter().map(|(_, d)| d.clone()).collect();
    diagrams.extend(
        corpus
            .braids
            .iter()
            .filter(|(_, w)| w.len() <= 6)
            .map(|(_, w)| w.to_diagram()),
    );
    let triples: Vec<(PlanarDiagram, usize)> = diagrams
        .iter()
        .flat_map(|d| {
            d.crossings()
                .iter()
                .filter(|c| !d.is_singular(c.id))
                .map(|c| (d.clone(), c.id))
                .collect::<Vec<_>>()
        })
        .collect();
    let eng = VassilievEngine::new(4, VassilievForm::Conway);
    // The raw expansion keys ordered chord diagrams; the identity is exact
    // once diagrams related by the emitted tangency swaps are identified.
    let outcomes: Vec<(bool, bool)> = triples
        .par_iter()
        .map(|(d, id)| {
            let r = d.resolve(*id).expect("regular crossing");
            let (p, m, s) = (
                eng.expand(&r.plus),
                eng.expand(&r.minus),
                eng.expand(&r.star),
            );
            let diff = p.minus(&m).minus(&s.map_values(|x| x.shift_h(1)));
            (diff.is_zero(), diff.map_keys(unordered).is_zero())
        })
        .collect();
    let raw = outcomes.iter().filter(|o| o.0).count();
    let vbad = outcomes.iter().filter(|o| !o.1).count();
    let loops: Vec<(String, TransversalLoop)> = corpus_loops(corpus, seed ^ 0x5eed, 60);
    let lbad = loops
        .par_iter()
        .filter(|(_, l)| !l.lin_and_j().is_ok_and(|r| r.agree))
        .count();
    let ok = vbad == 0 && lbad == 0 && triples.len() >= 50 && loops.len() >= 100;
    (
        ok,
        format!(
            "{} resolved triples at order 4: {} exact on ordered chord diagrams, {} exact modulo tangency swaps; \
             two-path lin on {} loops, {} disagreeing",
            triples.len(),
            raw,
            triples.len() - vbad,
            loops.len(),
            lbad
        ),
    )
}

pub fn report_json(reports: &[CriterionReport]) -> serde_json::Value {
    serde_json::Value::Array(reports.iter().map(|r| r.to_json()).collect())
}
