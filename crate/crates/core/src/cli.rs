//! The `germforge` command line.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

use crate::characters::{char_act, char_eq, char_eval, find_principal_in, BasicOpen, FindOutcome, PrincipalCharacter};
use crate::families::{paper_witness_suite_jobs, znx_reverse_report, SuiteOptions};
use crate::germ::{
    germ_compose, germ_eq, in_iso_interior, isotropy_at, rtp_witness, Germ, GermEq, IsoVerdict, NoCertificate,
    SubgroupoidSpec,
};
use crate::hull::{hull_eq, show_normal, show_word, HullEq, HullElement};
use crate::lcsc::{Bounds, CancellationVerdict, Category, FiniteCategory, TableError};
use crate::oracle::{
    bounded_extensional_eq, bounded_germ_eq, eval_word, hull_agreement, ExtensionalVerdict, GermOracleVerdict,
    TruncationBox,
};
use crate::report::{overall, Document, Meta, PropositionReport, Status};
use crate::syntax::{self, ParseError};

pub const EXIT_USAGE: i32 = 3;
const DEFAULT_BOUND: u64 = 200;

#[derive(Debug, Parser)]
#[command(name = "germforge", version, about = "Inverse hulls, characters and germ groupoids of left cancellative small categories")]
pub struct Cli {
    /// nx-zmod, z-nx or table:<path>
    #[arg(long, global = true, default_value = "nx-zmod")]
    pub family: String,
    /// Modulus for nx-zmod.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Box bound for bounded searches.
    #[arg(long, global = true, env = "GERMFORGE_DEFAULT_BOUND", value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: Option<u64>,
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check against the brute-force oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Omit the timestamped metadata block.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe the backend.
    Family,
    /// Compose two arrows.
    Compose { a: String, b: String },
    #[command(subcommand)]
    Hull(HullCmd),
    #[command(subcommand)]
    Char(CharCmd),
    #[command(subcommand)]
    Germ(GermCmd),
    /// The isotropy group at a principal character.
    Isotropy {
        #[arg(long)]
        at: String,
    },
    /// Is the germ of a hull element in the interior of the isotropy?
    IsoInterior {
        s: String,
        #[arg(long)]
        at: String,
    },
    /// Relative topological principality certificate at a character.
    Rtp {
        #[arg(long)]
        at: String,
        #[arg(long, value_delimiter = ',', default_value = "invertibles")]
        subgroupoids: Vec<SubgroupoidArg>,
    },
    /// Run the proposition suite for the family.
    VerifyPaper {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare hull operations on random words with the brute-force oracle.
    OracleCheck {
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum HullCmd {
    Normalize { s: String },
    Apply { s: String, x: String },
    Eq { s: String, t: String },
    Compose { s: String, t: String },
    Invert { s: String },
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    Eval { chi: String, ideal: String },
    Act { s: String, chi: String },
    Eq { a: String, b: String },
    Find {
        ideal: String,
        #[arg(long)]
        forbid: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GermCmd {
    Eq {
        s: String,
        t: String,
        #[arg(long)]
        at: String,
    },
    Compose { g1: String, g2: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubgroupoidArg {
    Units,
    Invertibles,
    IsoInterior,
}

impl From<SubgroupoidArg> for SubgroupoidSpec {
    fn from(a: SubgroupoidArg) -> Self {
        match a {
            SubgroupoidArg::Units => SubgroupoidSpec::UnitSpace,
            SubgroupoidArg::Invertibles => SubgroupoidSpec::InvertiblesAction,
            SubgroupoidArg::IsoInterior => SubgroupoidSpec::IsoInterior,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    /// Reports that end the run, e.g. a table that is not left cancellative.
    Abort(Vec<PropositionReport>),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error at {e}"))
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let reports = match load(cli).and_then(|cat| dispatch(cli, &cat)) {
        Ok(r) | Err(Failure::Abort(r)) => r,
        Err(Failure::Usage(msg)) => {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") };
        }
    };
    let code = overall(&reports).exit_code();
    let doc = Document { meta: (!cli.no_meta).then(Meta::now), reports };
    let stdout = if cli.json {
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        doc.render()
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn load(cli: &Cli) -> Res<Category> {
    match cli.family.as_str() {
        "nx-zmod" => Ok(Category::nx_zmod(cli.n)),
        "z-nx" => Ok(Category::z_nx()),
        other => {
            let Some(path) = other.strip_prefix("table:") else {
                return Err(Failure::Usage(format!("unknown family `{other}` (expected nx-zmod, z-nx or table:<path>)")));
            };
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            match FiniteCategory::from_json(&text) {
                Ok(t) => Ok(Category::Table(t)),
                Err(TableError::Parse(e)) => Err(Failure::Usage(format!("{path}: {e}"))),
                Err(TableError::NotLeftCancellative(x, y, z)) => Err(Failure::Abort(vec![PropositionReport::new(
                    "table",
                    Status::Fail,
                    "not left cancellative",
                )
                .witness("x", x)
                .witness("y", y)
                .witness("z", z)])),
                Err(e) => Err(Failure::Abort(vec![PropositionReport::new("table", Status::Fail, e.to_string())])),
            }
        }
    }
}

fn bounds(cli: &Cli) -> Bounds {
    Bounds::uniform(cli.bound.unwrap_or(DEFAULT_BOUND))
}

fn done(r: PropositionReport) -> Res<Vec<PropositionReport>> {
    Ok(vec![r])
}

fn hull(cat: &Category, src: &str) -> Res<HullElement> {
    Ok(syntax::parse_hull(cat, src)?)
}

fn chi(cat: &Category, src: &str) -> Res<PrincipalCharacter> {
    Ok(syntax::parse_character(cat, src)?)
}

fn germ_of(cat: &Category, s: HullElement, at: &PrincipalCharacter) -> Res<Germ> {
    Germ::of_hull(cat, s, at.clone()).map_err(|e| Failure::Usage(format!("{}: {e}", at.show(cat))))
}

fn dispatch(cli: &Cli, cat: &Category) -> Res<Vec<PropositionReport>> {
    let b = bounds(cli);
    match &cli.command {
        Command::Family => done(family_report(cat, b)),
        Command::Compose { a, b: rhs } => {
            let (x, y) = (syntax::parse_arrow(cat, a)?, syntax::parse_arrow(cat, rhs)?);
            done(match cat.compose(&x, &y) {
                Ok(z) => PropositionReport::new("compose", Status::Pass, cat.show(&z)).witness("result", cat.show(&z)),
                Err(e) => PropositionReport::new("compose", Status::Fail, e.to_string()),
            })
        }
        Command::Hull(cmd) => hull_cmd(cli, cat, cmd),
        Command::Char(cmd) => char_cmd(cat, cmd),
        Command::Germ(cmd) => germ_cmd(cli, cat, cmd),
        Command::Isotropy { at } => {
            let at = chi(cat, at)?;
            let iso = isotropy_at(cat, &at).map_err(|e| Failure::Usage(e.to_string()))?;
            let shown: Vec<String> = iso.elements.as_ref().unwrap_or(&iso.generators).iter().map(|g| g.show(cat)).collect();
            let mut r = PropositionReport::new(
                "isotropy",
                Status::Pass,
                match iso.order() {
                    Some(k) => format!("order {k}"),
                    None => format!("infinite, {} generators", iso.generators.len()),
                },
            )
            .witness(if iso.elements.is_some() { "elements" } else { "generators" }, shown.join(", "));
            if let Some(c) = iso.is_cyclic() {
                r = r.witness("cyclic", c.to_string());
            }
            if cli.oracle {
                if let Some(el) = &iso.elements {
                    let bx = TruncationBox::new(cat, b);
                    let mut agrees = true;
                    for (i, g) in el.iter().enumerate() {
                        for h in &el[i + 1..] {
                            let v = bounded_germ_eq(cat, &bx, |x| g.s.apply(cat, x), |x| h.s.apply(cat, x), &at.c, 4);
                            agrees &= matches!(v, GermOracleVerdict::Distinct(_));
                        }
                    }
                    r = r.oracle(agrees);
                }
            }
            done(r.bound("bound", b.mult))
        }
        Command::IsoInterior { s, at } => {
            let at = chi(cat, at)?;
            let g = germ_of(cat, hull(cat, s)?, &at)?;
            let r = match in_iso_interior(cat, &g, cli.budget) {
                IsoVerdict::Yes(e) => PropositionReport::new("iso-interior", Status::Pass, "Yes").witness("neighborhood", e.show(cat)),
                IsoVerdict::No(NoCertificate::NotIsotropy { from, to }) => PropositionReport::new("iso-interior", Status::Pass, "No")
                    .witness("reason", "not isotropy")
                    .witness("move", format!("{} -> {}", PrincipalCharacter::new(from).show(cat), PrincipalCharacter::new(to).show(cat))),
                IsoVerdict::No(NoCertificate::MovedPoints { rule, examples }) => {
                    let ex: Vec<String> =
                        examples.iter().map(|(d, sd)| format!("{} -> {}", cat.show(d), cat.show(sd))).collect();
                    PropositionReport::new("iso-interior", Status::Pass, "No")
                        .witness("rule", rule)
                        .witness("moved", ex.join(", "))
                }
                IsoVerdict::Unknown(why) => PropositionReport::new("iso-interior", Status::Unknown, why),
            };
            done(r.witness("germ", g.show(cat)).bound("budget", cli.budget))
        }
        Command::Rtp { at, subgroupoids } => {
            let at = chi(cat, at)?;
            let family: Vec<SubgroupoidSpec> = subgroupoids.iter().map(|&s| s.into()).collect();
            let names: Vec<String> = family.iter().map(ToString::to_string).collect();
            let r = match rtp_witness(cat, &at, &family, cli.budget) {
                Ok(cert) => PropositionReport::new("rtp", Status::Pass, format!("lands in {}", family[cert.subgroupoid]))
                    .witness("bisection", cert.bisection.show(cat))
                    .witness("checked", cert.checked.len().to_string()),
                Err(f) => {
                    let misses: Vec<String> =
                        f.misses.iter().map(|(k, g, why)| format!("{}: {} ({why})", family[*k], g.show(cat))).collect();
                    PropositionReport::new("rtp", Status::Fail, "no member of the family contains the image")
                        .witness("misses", misses.join("; "))
                }
            };
            done(r.witness("family", names.join(",")).bound("budget", cli.budget))
        }
        Command::VerifyPaper { samples, seed } => {
            let opts = SuiteOptions { bound: b.mult, budget: cli.budget, samples: *samples, seed: *seed, oracle: true };
            match cat {
                Category::NxZmod(_) => Ok(paper_witness_suite_jobs(cli.n, &opts, cli.jobs as usize)),
                Category::ZNx(_) => done(znx_reverse_report(&opts)),
                Category::Table(_) => Err(Failure::Usage("verify-paper needs --family nx-zmod or z-nx".into())),
            }
        }
        Command::OracleCheck { samples, seed } => {
            let d = hull_agreement(cat, *samples, b, *seed);
            let status = if d.is_empty() { Status::Pass } else { Status::Fail };
            let mut r = PropositionReport::new("oracle-check", status, format!("{} discrepancies", d.len()))
                .bound("samples", *samples as u64)
                .bound("seed", *seed)
                .bound("bound", b.mult);
            if let Some(first) = d.first() {
                r = r.witness("first", first.clone());
            }
            done(r.oracle(d.is_empty()))
        }
    }
}

fn family_report(cat: &Category, b: Bounds) -> PropositionReport {
    let check = b.mult.min(40);
    let gens: Vec<String> = cat.invertibles().generators().iter().map(|u| cat.show(u)).collect();
    let r = PropositionReport::new("family", Status::Pass, cat.to_string())
        .witness("invertibles", gens.join(", "))
        .witness("right_lcm", cat.is_right_lcm().to_string())
        .bound("cancellation_bound", check);
    match cat.validate_left_cancellative(check) {
        CancellationVerdict::Proven => r.witness("left_cancellative", "Proven"),
        CancellationVerdict::VerifiedUpTo(k) => {
            let mut r = r.witness("left_cancellative", format!("verified up to {k}"));
            r.verdict = Status::Unknown;
            r
        }
        CancellationVerdict::Counterexample(x, y, z) => {
            let mut r = r.witness(
                "left_cancellative",
                format!("counterexample {}·{} = {}·{}", cat.show(&x), cat.show(&y), cat.show(&x), cat.show(&z)),
            );
            r.verdict = Status::Fail;
            r
        }
    }
}

fn hull_cmd(cli: &Cli, cat: &Category, cmd: &HullCmd) -> Res<Vec<PropositionReport>> {
    let b = bounds(cli);
    let show = |h: &HullElement| {
        let r = PropositionReport::new("hull", Status::Pass, h.show(cat)).witness("word", show_word(cat, h.word()));
        match h.normalize(cat) {
            Ok(n) => r.witness("normal_form", show_normal(cat, &n)),
            Err(e) => r.witness("normal_form", e.to_string()),
        }
    };
    match cmd {
        HullCmd::Normalize { s } => {
            let h = hull(cat, s)?;
            done(match h.normalize(cat) {
                Ok(n) => PropositionReport::new("normalize", Status::Pass, show_normal(cat, &n))
                    .witness("domain", h.domain(cat).show(cat)),
                Err(e) => PropositionReport::new("normalize", Status::Unknown, e.to_string()),
            })
        }
        HullCmd::Apply { s, x } => {
            let (h, x) = (hull(cat, s)?, syntax::parse_arrow(cat, x)?);
            let r = match h.apply(cat, &x) {
                Some(y) => PropositionReport::new("apply", Status::Pass, cat.show(&y)).witness("result", cat.show(&y)),
                None => PropositionReport::new("apply", Status::Pass, "undefined").witness("result", "undefined"),
            };
            let r = if cli.oracle { r.oracle(eval_word(cat, h.word(), &x) == h.apply(cat, &x)) } else { r };
            done(r)
        }
        HullCmd::Eq { s, t } => {
            let (hs, ht) = (hull(cat, s)?, hull(cat, t)?);
            let verdict = hull_eq(cat, &hs, &ht, b);
            let r = match &verdict {
                HullEq::Equal => PropositionReport::new("hull-eq", Status::Pass, "Equal"),
                HullEq::Distinct(x) => {
                    let at = |h: &HullElement| h.apply(cat, x).map_or("undefined".into(), |y| cat.show(&y));
                    PropositionReport::new("hull-eq", Status::Pass, "Distinct")
                        .witness("point", cat.show(x))
                        .witness("left", at(&hs))
                        .witness("right", at(&ht))
                }
                HullEq::VerifiedUpTo(k) => PropositionReport::new("hull-eq", Status::Unknown, format!("agree up to {k}")),
            };
            let mut r = r.bound("bound", b.mult);
            if cli.oracle {
                let bx = TruncationBox::new(cat, b);
                let o = bounded_extensional_eq(&bx, |x| eval_word(cat, hs.word(), x), |x| eval_word(cat, ht.word(), x));
                let agrees = match (&verdict, o) {
                    (HullEq::Distinct(x), ExtensionalVerdict::AgreeOnBox) => {
                        eval_word(cat, hs.word(), x) != eval_word(cat, ht.word(), x)
                    }
                    (HullEq::Distinct(_), ExtensionalVerdict::Witness(_)) => true,
                    (_, ExtensionalVerdict::AgreeOnBox) => true,
                    _ => false,
                };
                r = r.oracle(agrees);
            }
            done(r)
        }
        HullCmd::Compose { s, t } => {
            let st = hull(cat, s)?.compose(cat, &hull(cat, t)?).map_err(|e| Failure::Usage(e.to_string()))?;
            done(show(&st))
        }
        HullCmd::Invert { s } => done(show(&hull(cat, s)?.invert(cat))),
    }
}

fn char_cmd(cat: &Category, cmd: &CharCmd) -> Res<Vec<PropositionReport>> {
    match cmd {
        CharCmd::Eval { chi: c, ideal } => {
            let (c, e) = (chi(cat, c)?, syntax::parse_ideal(cat, ideal)?);
            let v = char_eval(cat, &c, &e);
            done(PropositionReport::new("char-eval", Status::Pass, if v { "1" } else { "0" }))
        }
        CharCmd::Act { s, chi: c } => {
            let (h, c) = (hull(cat, s)?, chi(cat, c)?);
            done(match char_act(cat, &h, &c) {
                Ok(d) => PropositionReport::new("char-act", Status::Pass, d.show(cat)),
                Err(e) => PropositionReport::new("char-act", Status::Pass, "undefined").witness("reason", e.to_string()),
            })
        }
        CharCmd::Eq { a, b } => {
            let (x, y) = (chi(cat, a)?, chi(cat, b)?);
            let eq = char_eq(cat, &x, &y);
            done(PropositionReport::new("char-eq", Status::Pass, if eq { "Equal" } else { "Distinct" }))
        }
        CharCmd::Find { ideal, forbid } => {
            let e = syntax::parse_ideal(cat, ideal)?;
            let f = forbid.iter().map(|s| syntax::parse_ideal(cat, s)).collect::<Result<Vec<_>, _>>()?;
            let u = BasicOpen::new(e, f);
            done(match find_principal_in(cat, &u) {
                FindOutcome::Found(c) => PropositionReport::new("char-find", Status::Pass, c.show(cat)),
                FindOutcome::EmptyVerified => {
                    PropositionReport::new("char-find", Status::Pass, "empty").witness("open", u.show(cat))
                }
            })
        }
    }
}

fn germ_cmd(cli: &Cli, cat: &Category, cmd: &GermCmd) -> Res<Vec<PropositionReport>> {
    match cmd {
        GermCmd::Eq { s, t, at } => {
            let at = chi(cat, at)?;
            let (g1, g2) = (germ_of(cat, hull(cat, s)?, &at)?, germ_of(cat, hull(cat, t)?, &at)?);
            let verdict = germ_eq(cat, &g1, &g2);
            let mut r = match &verdict {
                GermEq::Equal(e) => PropositionReport::new("germ-eq", Status::Pass, "Equal").witness("neighborhood", e.show(cat)),
                GermEq::Distinct(x) => PropositionReport::new("germ-eq", Status::Pass, "Distinct")
                    .witness("point", cat.show(x))
                    .witness("left", cat.show(&g1.value(cat)))
                    .witness("right", cat.show(&g2.value(cat))),
            };
            if cli.oracle {
                let b = bounds(cli);
                let bx = TruncationBox::new(cat, b);
                let o = bounded_germ_eq(cat, &bx, |x| g1.s.apply(cat, x), |x| g2.s.apply(cat, x), &at.c, 4);
                let agrees = matches!(
                    (&verdict, &o),
                    (GermEq::Equal(_), GermOracleVerdict::AgreeOnNeighborhood(_)) | (GermEq::Distinct(_), GermOracleVerdict::Distinct(_))
                );
                r = r.bound("bound", b.mult).oracle(agrees);
            }
            done(r)
        }
        GermCmd::Compose { g1, g2 } => {
            let (a, b) = (syntax::parse_germ(cat, g1)?, syntax::parse_germ(cat, g2)?);
            done(match germ_compose(cat, &a, &b) {
                Ok(g) => PropositionReport::new("germ-compose", Status::Pass, g.show(cat))
                    .witness("target", g.target(cat).show(cat)),
                Err(e) => PropositionReport::new("germ-compose", Status::Fail, e.to_string()),
            })
        }
    }
}
