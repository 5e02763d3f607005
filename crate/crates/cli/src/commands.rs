//! One function per verb. Each returns a table, a JSON report and, where the
//! verb produces one, the text of an output file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use qframe_core::{
    are_equivalent, frame_with_frame_operator, map_frame, random, solve_min_norm, sqrt_psd, Frame,
    QMatrix, QVector, Relation,
};
use rand::Rng;
use serde::Serialize;

use crate::formats::{
    entries_of, read_frame, read_operator, read_vector, to_json_string, Entry, FrameFile,
    VectorFile,
};
use crate::report::{EquivalenceJson, FrameReportJson, MapReportJson, IMAGE_FRAME_CRITERION};

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub table: String,
    pub json: String,
    /// Contents for `--out`, if the verb produces a file.
    pub artifact: Option<String>,
}

impl Outcome {
    fn new<T: Serialize>(table: String, report: &T, artifact: Option<String>) -> Self {
        Self {
            table,
            json: pretty(report),
            artifact,
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn frame_text(f: &Frame) -> String {
    to_json_string(&FrameFile::from_frame(f))
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn push_residuals(table: &mut String, residuals: &[(&str, f64)]) {
    if residuals.is_empty() {
        return;
    }
    table.push_str("residuals\n");
    for (name, r) in residuals {
        let _ = writeln!(table, "  {name:<22}{}", sci(*r));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Generic,
    Parseval,
    WithOperator,
}

/// `m` vectors of `ℍⁿ` whose frame operator is `l`.
///
/// For `m = n` these are the columns of `l^(1/2)`; otherwise `l^(1/2)` is
/// applied to a random Parseval frame of `m` vectors.
pub fn frame_with_operator<R: Rng + ?Sized>(rng: &mut R, l: &QMatrix, m: usize) -> Result<Frame> {
    let n = l.rows();
    ensure!(
        m >= n,
        "m = {m} is smaller than n = {n}: {m} vectors cannot span ℍ^{n}"
    );
    let exact = frame_with_frame_operator(l)?;
    if m == n {
        return Ok(exact);
    }
    let root = sqrt_psd(l)?;
    let parseval = loop {
        if let Ok(p) = random::frame(rng, n, m).parseval_normalize() {
            break p;
        }
    };
    Ok(map_frame(&root, &parseval)?.frame)
}

pub fn gen<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    kind: GenKind,
    operator: Option<&Path>,
) -> Result<Outcome> {
    ensure!(n >= 1, "n must be at least 1");
    ensure!(
        m >= n,
        "m = {m} is smaller than n = {n}: {m} vectors cannot span ℍ^{n}"
    );
    let frame = match kind {
        GenKind::Generic => random::frame(rng, n, m),
        GenKind::Parseval => loop {
            if let Ok(p) = random::frame(rng, n, m).parseval_normalize() {
                break p;
            }
        },
        GenKind::WithOperator => {
            let Some(path) = operator else {
                bail!("--kind with-operator needs --operator <file>");
            };
            let l = read_operator(path)?;
            ensure!(
                l.shape() == (n, n),
                "{}: operator is {}x{}, expected {n}x{n}",
                path.display(),
                l.rows(),
                l.cols()
            );
            frame_with_operator(rng, &l, m).with_context(|| path.display().to_string())?
        }
    };
    let text = frame_text(&frame);
    Ok(Outcome {
        table: text.clone(),
        json: text.clone(),
        artifact: Some(text),
    })
}

pub fn info(path: &Path) -> Result<Outcome> {
    let frame = read_frame(path)?;
    let report = frame.report()?;
    let json = FrameReportJson::new(&report, frame.dim(), frame.len());
    let mut t = String::new();
    let _ = writeln!(t, "status                  {}", json.status);
    let _ = writeln!(t, "dimension               {}", frame.dim());
    let _ = writeln!(t, "vectors                 {}", frame.len());
    match report.formulas {
        Some(f) => {
            let _ = writeln!(t, "lower bound A           {:.12}", f.lower_eig);
            let _ = writeln!(t, "  lambda_min(S)         {:.12}", f.lower_eig);
            let _ = writeln!(t, "  1/||S^-1||            {:.12}", f.lower_inverse_norm);
            let _ = writeln!(t, "  1/||T^+||^2           {:.12}", f.lower_pinv);
            let _ = writeln!(t, "upper bound B           {:.12}", f.upper_eig);
            let _ = writeln!(t, "  lambda_max(S)         {:.12}", f.upper_eig);
            let _ = writeln!(t, "  ||S||                 {:.12}", f.upper_operator_norm);
            let _ = writeln!(t, "  ||T||^2               {:.12}", f.upper_synthesis);
        }
        None => {
            let lmin = report.spectrum.last().copied().unwrap_or(0.0);
            let _ = writeln!(
                t,
                "lower bound             lambda_min(S) = {} is below the threshold {}",
                sci(lmin),
                sci(report.threshold)
            );
        }
    }
    let spectrum: Vec<String> = report.spectrum.iter().map(|x| format!("{x:.12}")).collect();
    let _ = writeln!(t, "spectrum of S           [{}]", spectrum.join(", "));
    push_residuals(&mut t, &report.residuals);
    Ok(Outcome::new(t, &json, None))
}

#[derive(Serialize)]
struct DerivedFrameJson {
    frame: FrameFile,
    residuals: BTreeMap<&'static str, f64>,
}

pub fn dual(path: &Path) -> Result<Outcome> {
    let frame = read_frame(path)?;
    let dual = frame.canonical_dual()?;
    let n = frame.dim();
    let id = QMatrix::identity(n);
    let duality = dual
        .synthesis()
        .matmul(&frame.analysis_matrix())?
        .max_abs_diff(&id);
    let b = frame.optimal_bounds()?;
    let db = dual.optimal_bounds()?;
    let bounds = ((db.lower - 1.0 / b.upper).abs() * b.upper)
        .max((db.upper - 1.0 / b.lower).abs() * b.lower);
    let back = dual.canonical_dual()?;
    let double_dual = frame
        .vectors()
        .iter()
        .zip(back.vectors())
        .map(|(u, v)| u.max_abs_diff(v))
        .fold(0.0, f64::max);
    let residuals = vec![
        ("duality", duality),
        ("reciprocal_bounds", bounds),
        ("double_dual", double_dual),
    ];
    let mut t = format!(
        "canonical dual of {} vectors in H^{n}\nbounds                  ({:.12}, {:.12})\n",
        frame.len(),
        db.lower,
        db.upper
    );
    push_residuals(&mut t, &residuals);
    let json = DerivedFrameJson {
        frame: FrameFile::from_frame(&dual),
        residuals: residuals.into_iter().collect(),
    };
    Ok(Outcome::new(t, &json, Some(frame_text(&dual))))
}

pub fn parseval(path: &Path) -> Result<Outcome> {
    let frame = read_frame(path)?;
    let p = frame.parseval_normalize()?;
    let id = QMatrix::identity(frame.dim());
    let residuals = vec![("parseval", p.frame_operator().max_abs_diff(&id))];
    let mut t = format!(
        "Parseval normalization of {} vectors in H^{}\n",
        frame.len(),
        frame.dim()
    );
    push_residuals(&mut t, &residuals);
    let json = DerivedFrameJson {
        frame: FrameFile::from_frame(&p),
        residuals: residuals.into_iter().collect(),
    };
    Ok(Outcome::new(t, &json, Some(frame_text(&p))))
}

#[derive(Serialize)]
struct VectorJson {
    entries: Vec<Entry>,
    residuals: BTreeMap<&'static str, f64>,
}

fn rel(x: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        x / scale
    } else {
        x
    }
}

fn format_vector(v: &QVector) -> String {
    v.iter().map(|q| format!("  {q}\n")).collect()
}

/// Frame coefficients `⟨uᵢ, S⁻¹u⟩` of a vector.
pub fn coeffs(frame_path: &Path, vector_path: &Path) -> Result<Outcome> {
    let frame = read_frame(frame_path)?;
    let u = read_vector(vector_path)?;
    ensure!(
        u.len() == frame.dim(),
        "{}: vector has {} entries, expected dim = {}",
        vector_path.display(),
        u.len(),
        frame.dim()
    );
    let natural = frame.natural_representation(&u)?;
    let c = frame.frame_coefficients(&u)?;
    let un = u.norm();
    let min_norm = solve_min_norm(frame.synthesis(), &u)?;
    let residuals = vec![
        ("reconstruction", rel((&natural.natural - &u).norm(), un)),
        ("dual_side", rel(natural.residual, un)),
        ("min_norm_solution", rel((&c - &min_norm).norm(), c.norm())),
    ];
    let mut t = format!("frame coefficients ({})\n", c.len());
    t.push_str(&format_vector(&c));
    push_residuals(&mut t, &residuals);
    let json = VectorJson {
        entries: entries_of(&c),
        residuals: residuals.into_iter().collect(),
    };
    Ok(Outcome::new(
        t,
        &json,
        Some(to_json_string(&VectorFile::from_vector(&c))),
    ))
}

/// `u = Σ uᵢqᵢ`, compared against the minimal-norm coefficients of `u`.
pub fn reconstruct(frame_path: &Path, coeff_path: &Path) -> Result<Outcome> {
    let frame = read_frame(frame_path)?;
    let q = read_vector(coeff_path)?;
    ensure!(
        q.len() == frame.len(),
        "{}: {} coefficients for a frame of {} vectors",
        coeff_path.display(),
        q.len(),
        frame.len()
    );
    let u = frame.reconstruct(&q)?;
    let mut residuals = Vec::new();
    let mut excess = None;
    if frame.is_frame() {
        let c = frame.frame_coefficients(&u)?;
        let check = frame.pythagoras_check(&u, &q)?;
        residuals.push(("pythagoras", rel(check.residual, check.lhs)));
        residuals.push((
            "reconstruction",
            rel((&frame.reconstruct(&c)? - &u).norm(), u.norm()),
        ));
        excess = Some(q.norm_sqr() - c.norm_sqr());
    }
    let mut t = format!("vector ({})\n", u.len());
    t.push_str(&format_vector(&u));
    if let Some(e) = excess {
        let _ = writeln!(t, "norm^2 above minimal    {}", sci(e));
    }
    push_residuals(&mut t, &residuals);
    let json = VectorJson {
        entries: entries_of(&u),
        residuals: residuals.into_iter().collect(),
    };
    Ok(Outcome::new(
        t,
        &json,
        Some(to_json_string(&VectorFile::from_vector(&u))),
    ))
}

#[derive(Serialize)]
struct MapJson {
    report: MapReportJson,
    frame: FrameFile,
}

pub fn map(operator_path: &Path, frame_path: &Path) -> Result<Outcome> {
    let l = read_operator(operator_path)?;
    let frame = read_frame(frame_path)?;
    ensure!(
        l.cols() == frame.dim(),
        "{}: operator has {} columns, frame dimension is {}",
        operator_path.display(),
        l.cols(),
        frame.dim()
    );
    let mapped = map_frame(&l, &frame)?;
    let r = &mapped.report;
    let mut t = String::new();
    if r.is_frame {
        let _ = writeln!(t, "image is a frame of H^{}", l.rows());
    } else {
        let _ = writeln!(
            t,
            "image is not a frame: the operator is {}surjective",
            if r.surjective { "" } else { "not " }
        );
    }
    let _ = writeln!(t, "{IMAGE_FRAME_CRITERION}");
    if let Some(b) = r.bounds {
        let _ = writeln!(
            t,
            "bounds                  ({:.12}, {:.12})",
            b.lower, b.upper
        );
    }
    if let (Some(lo), Some(hi)) = (r.lower_floor, r.upper_ceiling) {
        let _ = writeln!(t, "guaranteed range        [{:.12}, {:.12}]", lo, hi);
    }
    if let Some(res) = r.operator_residual {
        push_residuals(&mut t, &[("frame_operator", res)]);
    }
    let json = MapJson {
        report: r.into(),
        frame: FrameFile::from_frame(&mapped.frame),
    };
    Ok(Outcome::new(t, &json, Some(frame_text(&mapped.frame))))
}

pub fn equiv(first: &Path, second: &Path) -> Result<Outcome> {
    let f = read_frame(first)?;
    let g = read_frame(second)?;
    let result = are_equivalent(&f, &g)?;
    let json = EquivalenceJson::from(&result);
    let mut t = format!("relation                {}\n", json.relation);
    match result.relation {
        Relation::Equivalent => t.push_str("kernels of the synthesis operators agree\n"),
        Relation::OneSided => t.push_str("kernel of the first lies in the kernel of the second\n"),
        Relation::None => {
            t.push_str("a kernel vector of the first is not annihilated by the second\n")
        }
    }
    let _ = writeln!(t, "residual                {}", sci(result.residual));
    if let Some(r) = result.inverse_residual {
        let _ = writeln!(t, "inverse residual        {}", sci(r));
    }
    if let Some(w) = &result.witness {
        t.push_str("witness\n");
        t.push_str(&format_vector(w));
    }
    let artifact = json.intertwiner.as_ref().map(to_json_string);
    Ok(Outcome::new(t, &json, artifact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{write_text, OperatorFile};
    use qframe_core::Quaternion;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::path::PathBuf;

    struct Dir(tempfile::TempDir);

    impl Dir {
        fn new() -> Self {
            Dir(tempfile::tempdir().unwrap())
        }

        fn frame(&self, name: &str, f: &Frame) -> PathBuf {
            let p = self.0.path().join(name);
            write_text(&p, &frame_text(f)).unwrap();
            p
        }

        fn text(&self, name: &str, text: &str) -> PathBuf {
            let p = self.0.path().join(name);
            write_text(&p, text).unwrap();
            p
        }
    }

    fn e(n: usize, k: usize) -> QVector {
        QVector::basis(n, k)
    }

    #[test]
    fn gen_is_deterministic_and_rejects_short_families() {
        let a = gen(
            &mut ChaCha8Rng::seed_from_u64(7),
            2,
            3,
            GenKind::Generic,
            None,
        )
        .unwrap();
        let b = gen(
            &mut ChaCha8Rng::seed_from_u64(7),
            2,
            3,
            GenKind::Generic,
            None,
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(gen(
            &mut ChaCha8Rng::seed_from_u64(7),
            3,
            2,
            GenKind::Generic,
            None
        )
        .is_err());
    }

    #[test]
    fn parseval_gen_has_unit_bounds() {
        let dir = Dir::new();
        let out = gen(
            &mut ChaCha8Rng::seed_from_u64(1),
            3,
            5,
            GenKind::Parseval,
            None,
        )
        .unwrap();
        let p = dir.text("p.json", out.artifact.as_deref().unwrap());
        let b = read_frame(&p).unwrap().optimal_bounds().unwrap();
        assert!((b.lower - 1.0).abs() < 1e-9 && (b.upper - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gen_with_operator_hits_the_operator() {
        let dir = Dir::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let l = random::positive_definite(&mut rng, 3, 0.5);
        let op = dir.text("l.json", &to_json_string(&OperatorFile::from_matrix(&l)));
        for m in [3, 6] {
            let out = gen(&mut rng, 3, m, GenKind::WithOperator, Some(&op)).unwrap();
            let f = dir.text("f.json", out.artifact.as_deref().unwrap());
            let f = read_frame(&f).unwrap();
            assert_eq!(f.len(), m);
            assert!(f.frame_operator().max_abs_diff(&l) < 1e-9 * l.max_abs());
        }
        assert!(gen(&mut rng, 3, 4, GenKind::WithOperator, None).is_err());
        let missing = dir.0.path().join("missing.json");
        assert!(gen(&mut rng, 3, 4, GenKind::WithOperator, Some(&missing)).is_err());
    }

    #[test]
    fn info_reports_bounds() {
        let dir = Dir::new();
        let f = Frame::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let out = info(&dir.frame("f.json", &f)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["status"], "frame");
        assert!((v["bounds"]["lower"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!((v["bounds"]["upper"].as_f64().unwrap() - 2.0).abs() < 1e-12);

        let basis = Frame::standard_basis(3).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&info(&dir.frame("b.json", &basis)).unwrap().json).unwrap();
        assert_eq!(v["bounds"]["lower"], 1.0);
        assert_eq!(v["bounds"]["upper"], 1.0);

        let deficient = Frame::new(2, vec![e(2, 0), e(2, 0)]).unwrap();
        let out = info(&dir.frame("d.json", &deficient)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["status"], "rank-deficient");
        assert!(v["spectrum"][1].as_f64().unwrap() <= v["threshold"].as_f64().unwrap());
        assert!(out.table.contains("below the threshold"));
    }

    #[test]
    fn info_names_the_offending_vector() {
        let dir = Dir::new();
        let p = dir.text(
            "bad.json",
            r#"{"dim":2,"vectors":[[[1,0,0,0],[0,0,0,0]],[[1,0,0,0]]]}"#,
        );
        let err = info(&p).unwrap_err().to_string();
        assert!(err.contains("vector 1"), "{err}");
        let p = dir.text("broken.json", "{");
        assert!(info(&p).unwrap_err().to_string().contains("malformed JSON"));
    }

    #[test]
    fn coeffs_pick_the_natural_representation() {
        let dir = Dir::new();
        let v1 = QVector::new(vec![Quaternion::ONE, Quaternion::I]);
        let v2 = QVector::new(vec![Quaternion::J, Quaternion::ZERO]);
        let f = Frame::new(2, vec![v1.clone(), v1.clone(), v2]).unwrap();
        let u = v1.mul_right(Quaternion::real(2.0));
        let up = dir.text("u.json", &to_json_string(&VectorFile::from_vector(&u)));
        let out = coeffs(&dir.frame("f.json", &f), &up).unwrap();
        let c = read_vector(&dir.text("c.json", out.artifact.as_deref().unwrap())).unwrap();
        let expected = QVector::new(vec![Quaternion::ONE, Quaternion::ONE, Quaternion::ZERO]);
        assert!(c.max_abs_diff(&expected) < 1e-12);

        let q = QVector::new(vec![
            Quaternion::real(2.0),
            Quaternion::ZERO,
            Quaternion::ZERO,
        ]);
        let qp = dir.text("q.json", &to_json_string(&VectorFile::from_vector(&q)));
        let out = reconstruct(&dir.frame("f.json", &f), &qp).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        let res = v["residuals"]["pythagoras"].as_f64().unwrap();
        assert!(res < 1e-12);
        assert!(out.table.contains("norm^2 above minimal"));
    }

    #[test]
    fn dual_and_parseval_residuals_are_small() {
        let dir = Dir::new();
        let f = random::frame(&mut ChaCha8Rng::seed_from_u64(4), 3, 5);
        let p = dir.frame("f.json", &f);
        for out in [dual(&p).unwrap(), parseval(&p).unwrap()] {
            let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
            for (name, r) in v["residuals"].as_object().unwrap() {
                assert!(r.as_f64().unwrap() < 1e-9, "{name}: {r}");
            }
        }
    }

    #[test]
    fn map_with_rank_deficient_operator_is_not_a_frame() {
        let dir = Dir::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random::frame(&mut rng, 3, 6);
        let l = random::matrix_of_rank(&mut rng, 3, 3, 2);
        let op = dir.text("l.json", &to_json_string(&OperatorFile::from_matrix(&l)));
        let out = map(&op, &dir.frame("f.json", &f)).unwrap();
        assert!(out.table.contains("not a frame"));
        assert!(out.table.contains("image frame criterion"));
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["report"]["is_frame"], false);
    }

    #[test]
    fn frame_is_equivalent_to_its_parseval_normalization() {
        let dir = Dir::new();
        let f = random::frame(&mut ChaCha8Rng::seed_from_u64(6), 2, 4);
        let p = f.parseval_normalize().unwrap();
        let out = equiv(&dir.frame("f.json", &f), &dir.frame("p.json", &p)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["relation"], "equivalent");
        assert!(v["residual"].as_f64().unwrap() < 1e-9);

        let a = Frame::new(2, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        let b = Frame::new(2, vec![e(2, 0), e(2, 1), e(2, 1)]).unwrap();
        let out = equiv(&dir.frame("a.json", &a), &dir.frame("b.json", &b)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["relation"], "none");
        assert!(v.get("witness").is_some());
        assert!(v.get("intertwiner").is_none());
    }
}
