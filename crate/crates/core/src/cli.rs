//! Command-line front end: argument parsing, dispatch and report rendering.

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{FiniteDimAlgebra, DEFAULT_MAX_DEGREE};
use crate::dsl::{emit_dsl, parse_dsl, AlgebraSpec};
use crate::endo::{build_adr, build_er, tier2_isomorphism, EndoAlgebra};
use crate::error::{Error, Result};
use crate::generators::{knorrer, nakayama_cyclic, staircase_nilpotent, truncated};
use crate::ideals::{
    has_good_leftpproximations, is_ideally_ordered, is_path_monomial, iso_classes, minimal_right_approximation,
    reduce_principal_to_monomial, surjection_exists, MonomialIdeal,
};
use crate::linalg::{q, Rational};
use crate::modules::{global_dimension, render_loewy};
use crate::qh::{analyze, characteristic_tilting, ideal_layer_order, verify_duality, QhData};

#[derive(Parser, Debug)]
#[command(
    name = "ringel",
    version,
    about = "Quasi-hereditary endomorphism algebras of monomial algebras and their Ringel duals"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    pub out: OutFormat,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Degree bound when building algebras from linear relations.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE, global = true)]
    pub max_degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monomiality, dimension, ideal order and approximation properties.
    Check { file: PathBuf },
    /// Isomorphism classes of monomial ideals and surjections between them.
    Ideals { file: PathBuf },
    /// The endomorphism algebra E_R: Hom grid, Cartan matrix, Gabriel quiver.
    Endo { file: PathBuf },
    /// Standard and costandard modules for the ideal layer order.
    Qh { file: PathBuf },
    /// Summands of the characteristic tilting module.
    Tilting { file: PathBuf },
    /// Certifies End(T) ≅ E_{R^op}.
    VerifyDuality { file: PathBuf },
    /// The algebra of the modules Re/rad^l Re.
    Adr { file: PathBuf },
    /// Emits an algebra file.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    Knorrer { r: u64, a: u64 },
    Truncated { file: PathBuf, m: usize },
    Nakayama { n: usize, m: usize },
    Nilpotent { file: PathBuf, s: usize },
}

/// Exit code with the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load_spec(path: &FsPath) -> Result<AlgebraSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_dsl(&text)
}

fn load(path: &FsPath, max_degree: usize) -> Result<Arc<FiniteDimAlgebra>> {
    Ok(Arc::new(load_spec(path)?.build(max_degree)?))
}

/// Report keys shared by every analysis subcommand.
struct Report {
    fields: serde_json::Map<String, Value>,
    text: String,
}

impl Report {
    fn new(a: &FiniteDimAlgebra) -> Result<Self> {
        let mut fields = serde_json::Map::new();
        for k in ["ideally_ordered", "witness", "classes", "cartan", "flags", "tilting", "duality"] {
            fields.insert(k.into(), Value::Null);
        }
        fields.insert("algebra".into(), json!(a.name()));
        fields.insert("dim".into(), json!(a.dim()));
        let mut r = Report { fields, text: format!("algebra {}\ndim {}\n", a.name(), a.dim()) };
        if is_path_monomial(a) {
            let a = Arc::new(a.clone());
            let io = is_ideally_ordered(&a)?;
            r.set("ideally_ordered", json!(io.ordered));
            r.set("witness", io.witness.as_ref().map_or(Value::Null, |(x, y)| json!([x, y])));
            r.line(format!("ideally ordered {}", io.ordered));
            if let Some((x, y)) = io.witness {
                r.line(format!("witness ({x}, {y})"));
            }
        }
        Ok(r)
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.into(), v);
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn render(self, out: OutFormat) -> String {
        match out {
            OutFormat::Text => self.text,
            OutFormat::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.fields)).expect("serializable report");
                s.push('\n');
                s
            }
        }
    }
}

fn grid_text(g: &[Vec<usize>]) -> String {
    g.iter().map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn class_json(c: &MonomialIdeal) -> Value {
    let a = c.algebra();
    json!({
        "name": c.name(),
        "head": a.vertex_labels()[c.head()],
        "dim": c.dim(),
        "layer": c.layer(),
        "annihilator": c.annihilator().iter().map(|&b| a.basis()[b].name.clone()).collect::<Vec<_>>(),
    })
}

fn classes_report(r: &mut Report, a: &Arc<FiniteDimAlgebra>) -> Result<Vec<MonomialIdeal>> {
    let classes = iso_classes(a)?;
    r.set("classes", Value::Array(classes.iter().map(class_json).collect()));
    r.line("classes");
    for (i, c) in classes.iter().enumerate() {
        r.line(format!("  {i}: R({}) dim {} layer {}", c.name(), c.dim(), c.layer()));
    }
    Ok(classes)
}

fn endo_report(r: &mut Report, er: &EndoAlgebra) {
    let cartan = er.cartan_matrix();
    r.set("cartan", json!(cartan));
    r.line(format!("dim E {}", er.algebra.dim()));
    r.line(format!("cartan\n{}", grid_text(&cartan)));
}

fn qh_report(r: &mut Report, er: &EndoAlgebra, qh: &QhData) -> Result<()> {
    r.set("order", json!(qh.order.layers));
    r.set("is_qh", json!(qh.is_qh));
    r.line(format!("layers {:?}", qh.order.layers));
    r.line(format!("quasi-hereditary {}", qh.is_qh));
    if let Some(f) = &qh.chain.failure {
        r.line(format!("heredity chain fails: {f}"));
    }
    let std: Vec<String> = qh.standards.iter().map(render_loewy).collect();
    let costd: Vec<String> = qh.costandards.iter().map(render_loewy).collect();
    r.set("standards", json!(std));
    r.set("costandards", json!(costd));
    for (i, (d, n)) in std.iter().zip(&costd).enumerate() {
        r.line(format!("  {}: Δ [{}]  ∇ [{}]", er.labels[i], d.replace(';', " / "), n.replace(';', " / ")));
    }
    if let Some(f) = qh.flags {
        r.set(
            "flags",
            json!({ "left_strongly": f.left_strongly, "right_strongly": f.right_strongly, "left_ultra": f.left_ultra }),
        );
        r.line(format!(
            "left strongly {}, right strongly {}, left ultra strongly {}",
            f.left_strongly, f.right_strongly, f.left_ultra
        ));
    }
    let gd = global_dimension(&er.algebra, 2 * er.vertex_count() + 2)?;
    r.set("global_dimension", json!(gd.to_string()));
    r.line(format!("global dimension {gd}"));
    Ok(())
}

fn tilting_report(r: &mut Report, t: &crate::qh::TiltingModule) {
    let items: Vec<Value> = t
        .summands
        .iter()
        .map(|s| {
            json!({
                "ideal": s.ideal.name(),
                "dim": s.module.dim(),
                "dim_vector": s.module.dim_vector(),
                "loewy": render_loewy(&s.module),
                "submodule_of": s.sub_vertex,
                "quotient_of": s.quotient_vertex,
            })
        })
        .collect();
    r.set("tilting", Value::Array(items));
    r.line("tilting summands");
    for s in &t.summands {
        r.line(format!(
            "  T(U={}) dim {} dims {:?} [{}] ⊆ P_{} ↞ P_{}",
            s.ideal.name(),
            s.module.dim(),
            s.module.dim_vector(),
            render_loewy(&s.module).replace(';', " / "),
            s.sub_vertex,
            s.quotient_vertex
        ));
    }
}

fn monomial_gate(a: &FiniteDimAlgebra) -> Result<()> {
    if is_path_monomial(a) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("'{}' is not presented by monomial relations", a.name())))
    }
}

/// Random elements p ∈ e_v R reduce to a monomial ideal isomorphic to Rp.
fn principal_reduction_checks(a: &Arc<FiniteDimAlgebra>, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    for v in 0..a.vertex_count() {
        let support = a.basis_with_target(v);
        for _ in 0..4 {
            let mut p = vec![Rational::from_integer(0.into()); a.dim()];
            for &b in &support {
                if rng.random_bool(0.6) {
                    p[b] = q(rng.random_range(-5..=5));
                }
            }
            if p.iter().all(|x| *x == q(0)) {
                continue;
            }
            reduce_principal_to_monomial(a, &p)?;
            done += 1;
        }
    }
    Ok(done)
}

fn dispatch(cli: &Cli) -> Result<String> {
    let md = cli.max_degree;
    match &cli.command {
        Command::Gen { what } => gen(what, md, cli.out),
        Command::Check { file } => {
            let spec = load_spec(file)?;
            let a = Arc::new(spec.build(md)?);
            let mut r = Report::new(&a)?;
            let monomial = is_path_monomial(&a);
            r.set("monomial", json!(monomial));
            r.set("finite_dimensional", json!(true));
            r.set("vertices", json!(a.vertex_count()));
            r.line(format!("monomial {monomial}"));
            r.line("finite dimensional true");
            if monomial {
                let good_left = has_good_leftpproximations(&a)?;
                let mut good_right = true;
                for c in iso_classes(&a)? {
                    if minimal_right_approximation(&c)?.kernel_dim > 0 {
                        good_right = false;
                    }
                }
                r.set("good_leftpproximations", json!(good_left));
                r.set("good_right_approximations", json!(good_right));
                r.line(format!("good left approximations {good_left}"));
                r.line(format!("good right approximations {good_right}"));
                if r.fields["ideally_ordered"] == json!(true) {
                    let n = principal_reduction_checks(&a, cli.seed)?;
                    r.set("principal_reductions", json!(n));
                    r.line(format!("random principal ideals reduced to monomial ideals {n} (seed {})", cli.seed));
                }
            }
            Ok(r.render(cli.out))
        }
        Command::Ideals { file } => {
            let a = load(file, md)?;
            monomial_gate(&a)?;
            let mut r = Report::new(&a)?;
            let classes = classes_report(&mut r, &a)?;
            let mut surj = vec![vec![false; classes.len()]; classes.len()];
            for (i, m) in classes.iter().enumerate() {
                for (j, n) in classes.iter().enumerate() {
                    surj[i][j] = surjection_exists(m, n)?;
                }
            }
            r.set("surjections", json!(surj));
            r.line("surjections (row onto column)");
            for row in &surj {
                r.line(format!("  {}", row.iter().map(|&b| if b { "1" } else { "." }).collect::<Vec<_>>().join(" ")));
            }
            Ok(r.render(cli.out))
        }
        Command::Endo { file } => {
            let a = load(file, md)?;
            monomial_gate(&a)?;
            let mut r = Report::new(&a)?;
            classes_report(&mut r, &a)?;
            let er = build_er(&a)?;
            endo_report(&mut r, &er);
            let counts = er.algebra.gabriel_arrow_counts();
            r.set("hom_grid", json!(er.dim_grid()));
            r.set("gabriel", json!(counts));
            r.line(format!("hom dimensions (row i, column j: Hom(M_i, M_j))\n{}", grid_text(&er.dim_grid())));
            r.line(format!("gabriel arrows (row i → column j)\n{}", grid_text(&counts)));
            Ok(r.render(cli.out))
        }
        Command::Qh { file } => {
            let a = load(file, md)?;
            monomial_gate(&a)?;
            let mut r = Report::new(&a)?;
            classes_report(&mut r, &a)?;
            let er = build_er(&a)?;
            endo_report(&mut r, &er);
            let qh = analyze(&er.algebra, &ideal_layer_order(&er)?)?;
            qh_report(&mut r, &er, &qh)?;
            Ok(r.render(cli.out))
        }
        Command::Tilting { file } => {
            let a = load(file, md)?;
            monomial_gate(&a)?;
            let mut r = Report::new(&a)?;
            if r.fields["ideally_ordered"] != json!(true) {
                return Err(Error::Unsupported(format!("'{}' is not ideally ordered", a.name())));
            }
            classes_report(&mut r, &a)?;
            let er = build_er(&a)?;
            endo_report(&mut r, &er);
            let qh = analyze(&er.algebra, &ideal_layer_order(&er)?)?;
            let t = characteristic_tilting(&er, &a, &qh)?;
            tilting_report(&mut r, &t);
            Ok(r.render(cli.out))
        }
        Command::VerifyDuality { file } => {
            let a = load(file, md)?;
            monomial_gate(&a)?;
            let rep = verify_duality(&a)?;
            let mut r = Report::new(&a)?;
            classes_report(&mut r, &a)?;
            endo_report(&mut r, &rep.er);
            if let Some(f) = rep.qh.flags {
                r.set("flags", json!({ "left_strongly": f.left_strongly, "right_strongly": f.right_strongly, "left_ultra": f.left_ultra }));
            }
            tilting_report(&mut r, &rep.tilting);
            let certs: Vec<Value> = rep
                .certificates
                .iter()
                .map(|c| json!({ "source": c.source, "target": c.target, "hom_dim": c.hom_dim, "rank": c.rank }))
                .collect();
            r.set(
                "duality",
                json!({
                    "tier": rep.tier,
                    "pass": rep.pass,
                    "end_t_dim": rep.end_t.algebra.dim(),
                    "e_op_dim": rep.e_op.algebra.dim(),
                    "certificates": certs,
                    "layer_matching": rep.layer_matching,
                }),
            );
            r.line(format!("End(T) dim {}, E(R^op) dim {}", rep.end_t.algebra.dim(), rep.e_op.algebra.dim()));
            for c in &rep.certificates {
                r.line(format!("  F: Hom(T_{}, T_{}) dim {} rank {}", c.source, c.target, c.hom_dim, c.rank));
            }
            r.line(format!("layer matching {:?}", rep.layer_matching));
            r.line(format!("duality tier {} pass {}", rep.tier, rep.pass));
            Ok(r.render(cli.out))
        }
        Command::Adr { file } => {
            let a = load(file, md)?;
            let mut r = Report::new(&a)?;
            let adr = build_adr(&a)?;
            r.set("adr_modules", json!(adr.labels));
            r.set("cartan", json!(adr.cartan_matrix()));
            r.set("adr_dim", json!(adr.algebra.dim()));
            r.line(format!("modules {}", adr.labels.join(" ")));
            r.line(format!("dim ADR {}", adr.algebra.dim()));
            r.line(format!("cartan\n{}", grid_text(&adr.cartan_matrix())));
            if is_path_monomial(&a) {
                let er = build_er(&a)?;
                let same = tier2_isomorphism(&er.algebra, &adr.algebra)?.is_some();
                r.set("matches_er", json!(same));
                r.line(format!("matches E_R {same}"));
            }
            Ok(r.render(cli.out))
        }
    }
}

fn gen(what: &GenCommand, md: usize, out: OutFormat) -> Result<String> {
    let spec = match what {
        GenCommand::Knorrer { r, a } => AlgebraSpec::from_monomial(&knorrer(*r, *a)?),
        GenCommand::Nakayama { n, m } => AlgebraSpec::from_monomial(&nakayama_cyclic(*n, *m)?),
        GenCommand::Truncated { file, m } => {
            let base = load_spec(file)?;
            let mut p = truncated(&base.quiver, *m)?;
            p.name = format!("{}_J{m}", base.name);
            AlgebraSpec::from_monomial(&p)
        }
        GenCommand::Nilpotent { file, s } => {
            let base = load_spec(file)?;
            let mut p = staircase_nilpotent(&base.quiver, *s)?;
            p.name = format!("N{s}_{}", base.name);
            AlgebraSpec::from_linear(&p)
        }
    };
    spec.build(md)?;
    let text = emit_dsl(&spec);
    Ok(match out {
        OutFormat::Text => text,
        OutFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&json!({ "algebra": spec.name, "dsl": text })).expect("serializable");
            s.push('\n');
            s
        }
    })
}

pub fn print_outcome(o: &Outcome) {
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
}
