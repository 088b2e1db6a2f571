//! Subcommand implementations. Each returns the verdict and fills the report.

use std::path::{Path, PathBuf};

use labelab_core::acceptance::{run_all, run_criterion, CRITERIA};
use labelab_core::decoders::{decode_graph, io_decode_scoped, verify as verify_bits, PairScope};
use labelab_core::formats::{self, LabelFile, SchemeFile};
use labelab_core::graph::{canonical_graphs, degeneracy, enumerate_graphs, twin_classes, Graph};
use labelab_core::logic::{
    atoms_decompose, eval_bounded, eval_infinite_u64, guard_transform, normalize_linear_atom,
    parse_formula, qe_order, Formula,
};
use labelab_core::oracle::{oracle_by_name, GraphClassOracle};
use labelab_core::pbs::{
    clear_denominators, disk_pbs, dot_product_pbs, segment_pbs, sign_pattern_probe, sign_split,
    split_and_clear_values,
};
use labelab_core::reductions::{
    search_algebraic, search_subgraph, verify_algebraic, verify_subgraph, BuiltinReduction,
    SubgraphRepresentation,
};
use labelab_core::schemes::{
    and_pointer_forest_encode, build_module_tree, cliquewidth_encode, dichotomic_encode,
    interval_bit_labels, interval_encode, linear_neighborhood_encode, or_pointer_encode,
    twin_encode, PointerLabeling, PointerMode,
};
use labelab_core::search::{
    diagonal_class, diagonal_decoders, find_labeling, pointer_number, pointer_search,
    verify_labeling, DiagonalResult, Labeling, Outcome, Scheme, SearchBudget, SearchError,
};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::inputs::{list, parse, relative_to, write_output, CliError, Loader};
use crate::report::{Report, Verdict};
use crate::{
    DecodeArgs, DiagArgs, EncodeArgs, EncodeKind, EnumerateArgs, FoCmd, Mode, PbsCmd, PbsName,
    PointerArgs, PropsArgs, RecognizeArgs, ReduceCmd, Scope, SearchArgs, SemanticsArg, VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

pub struct Ctx<'a> {
    pub loader: Loader,
    pub report: &'a mut Report,
    pub budget: SearchBudget,
    pub seed: u64,
}

impl Ctx<'_> {
    /// Write `text` to `out`, or to stdout, and record the witness.
    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<()> {
        match out {
            Some(p) => {
                write_output(p, text)?;
                self.report.witnesses.push(p.display().to_string());
            }
            None => {
                print!("{text}");
                self.report.witnesses.push("stdout".into());
            }
        }
        Ok(())
    }

    fn verdict(&mut self, v: Verdict, outcome: impl Into<String>) -> Result<Verdict> {
        self.report.outcome = outcome.into();
        Ok(v)
    }

    fn searched(&mut self) {
        self.report.budget = Some(self.budget);
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<'a, T>(v: &'a Option<T>, flag: &str, what: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| usage(format!("{flag} is required for {what}")))
}

fn oracle(name: &str) -> Result<Box<dyn GraphClassOracle>> {
    oracle_by_name(name).ok_or_else(|| {
        usage(format!(
            "unknown class '{name}' (expected forest, interval, cograph, dichotomic, lng or all)"
        ))
    })
}

fn pointer_mode(m: Mode) -> PointerMode {
    match m {
        Mode::Or => PointerMode::Or,
        Mode::And => PointerMode::And,
    }
}

/// An oversized label space is a budget matter, not an error.
fn domain_unknown<T>(r: std::result::Result<Outcome<T>, SearchError>) -> Result<Outcome<T>> {
    match r {
        Ok(o) => Ok(o),
        Err(SearchError::DomainTooLarge(m)) => {
            Ok(Outcome::Unknown(format!("label domain too large: {m}")))
        }
        Err(e) => Err(CliError::core(e)),
    }
}

fn num_labels(labels: Vec<[u64; 2]>) -> LabelFile {
    LabelFile::Num(labels.into_iter().map(|l| l.to_vec()).collect())
}

// ---------------------------------------------------------------------------
// encode / decode / verify / search
// ---------------------------------------------------------------------------

pub fn encode(a: &EncodeArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let out = a.out.as_deref();
    if a.scheme == EncodeKind::Interval {
        let input = ctx
            .loader
            .read(required(&a.model, "--model", "the interval encoder")?)?;
        let model = parse(&input, formats::parse_intervals)?;
        let enc = interval_encode(&model).map_err(CliError::core)?;
        let ranks: Vec<String> = enc
            .labels
            .iter()
            .map(|(l, r)| format!("({l},{r})"))
            .collect();
        ctx.report
            .detail(format!("endpoint ranks: {}", ranks.join(" ")));
        ctx.emit(
            out,
            &formats::write_labels(&LabelFile::Bits(interval_bit_labels(&enc))),
        )?;
        return ctx.verdict(Verdict::Positive, "encoded");
    }
    let g = ctx
        .loader
        .graph(required(&a.graph, "--graph", "this encoder")?)?;
    let text = match a.scheme {
        EncodeKind::Interval => unreachable!("handled above"),
        EncodeKind::Dichotomic => {
            dichotomic_encode(&g).map(|l| formats::write_labels(&num_labels(l)))
        }
        EncodeKind::Lng => {
            linear_neighborhood_encode(&g).map(|l| formats::write_labels(&num_labels(l)))
        }
        EncodeKind::OrPointer => {
            let c = match a.c {
                Some(c) => c,
                None => degeneracy(&g).map_err(CliError::core)?.0,
            };
            or_pointer_encode(&g, c).map(|l| formats::write_pointer(&l))
        }
        EncodeKind::AndForest => and_pointer_forest_encode(&g).map(|l| formats::write_pointer(&l)),
        EncodeKind::Twin => {
            let k = match a.k {
                Some(k) => k,
                None => twin_classes(&g).map_err(CliError::core)?.len(),
            };
            twin_encode(&g, k, pointer_mode(a.mode)).map(|l| formats::write_pointer(&l))
        }
        EncodeKind::Cw => {
            let k = *required(&a.k, "--k", "the cw encoder")?;
            let tree = match &a.tree {
                Some(p) => {
                    let input = ctx.loader.read(p)?;
                    parse(&input, formats::parse_module_tree)?
                }
                None => match build_module_tree(&g, k).map_err(CliError::core)? {
                    Some(t) => t,
                    None => {
                        return ctx
                            .verdict(Verdict::Negative, format!("no balanced {k}-module tree"))
                    }
                },
            };
            cliquewidth_encode(&g, &tree, k).map(|l| formats::write_labels(&LabelFile::Bits(l)))
        }
    };
    match text {
        Ok(t) => {
            ctx.emit(out, &t)?;
            ctx.verdict(Verdict::Positive, "encoded")
        }
        Err(e) => ctx.verdict(Verdict::Negative, format!("not encodable: {e}")),
    }
}

fn decode_plain<S: Scheme>(s: &S, labels: &[S::Label]) -> std::result::Result<Graph, SearchError> {
    let n = labels.len();
    let mut g = Graph::new(n, true)?;
    for u in 0..n {
        for v in 0..n {
            g.set_edge(u, v, s.adjacent(n, &labels[u], &labels[v])?);
        }
    }
    Ok(g)
}

fn decode_io<S: Scheme>(
    s: &S,
    out: &[S::Label],
    inn: &[S::Label],
) -> std::result::Result<Graph, SearchError> {
    let n = out.len();
    let mut g = Graph::new(n, true)?;
    for u in 0..n {
        for v in 0..n {
            g.set_edge(u, v, u != v && s.adjacent(n, &out[u], &inn[v])?);
        }
    }
    Ok(g)
}

fn kind_mismatch() -> CliError {
    usage("the label file kind does not match the scheme (bit schemes take bits/io labels, numeric schemes num labels)")
}

pub fn decode(a: &DecodeArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let scheme = ctx.loader.scheme(&a.scheme)?;
    let input = ctx.loader.read(&a.labels)?;
    let labels = parse(&input, formats::parse_labels)?;
    let decoded = match (&scheme, labels) {
        (SchemeFile::Bits(s), LabelFile::Bits(l)) => decode_graph(s, &l).map_err(SearchError::from),
        (SchemeFile::Bits(s), LabelFile::Io { out, inn }) => decode_io(s, &out, &inn),
        (SchemeFile::Fo(s), LabelFile::Num(l)) => decode_plain(s, &l),
        (SchemeFile::Pbs(s), LabelFile::Num(l)) => decode_plain(s, &l),
        _ => return Err(kind_mismatch()),
    };
    let g = match decoded {
        Ok(g) => g,
        Err(e) => return ctx.verdict(Verdict::Negative, format!("labels rejected: {e}")),
    };
    // Symmetric relations are reported as undirected graphs.
    let g = if g.is_symmetric() {
        g.to_undirected().map_err(CliError::core)?
    } else {
        g
    };
    ctx.emit(a.out.as_deref(), &formats::write_graph(&g))?;
    ctx.verdict(Verdict::Positive, "decoded")
}

fn check_num<S: Scheme<Label = Vec<u64>>>(
    s: &S,
    g: &Graph,
    l: Vec<Vec<u64>>,
    scope: PairScope,
) -> std::result::Result<bool, String> {
    verify_labeling(s, g, &Labeling::Plain(l), scope).map_err(|e| e.to_string())
}

pub fn verify(a: &VerifyArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let g = ctx.loader.graph(&a.graph)?;
    let scope = match a.scope {
        Scope::All => PairScope::AllPairs,
        Scope::Distinct => PairScope::DistinctPairs,
    };
    let checked: std::result::Result<bool, String> = if let Some(p) = &a.pointer {
        let input = ctx.loader.read(p)?;
        let pl: PointerLabeling = parse(&input, formats::parse_pointer)?;
        if pl.n() != g.n() {
            Err(format!("{} pointer labels for {} vertices", pl.n(), g.n()))
        } else {
            Ok(pl.verify(&g))
        }
    } else if let Some(r) = &a.rep {
        let rep = load_rep(ctx, r)?;
        verify_subgraph(&g, &rep).map_err(|e| e.to_string())
    } else {
        let scheme = ctx
            .loader
            .scheme(required(&a.scheme, "--scheme", "label verification")?)?;
        let input = ctx
            .loader
            .read(required(&a.labels, "--labels", "label verification")?)?;
        let labels = parse(&input, formats::parse_labels)?;
        match (&scheme, labels) {
            (SchemeFile::Bits(s), LabelFile::Bits(l)) => {
                verify_bits(s, &l, &g, scope).map_err(|e| e.to_string())
            }
            (SchemeFile::Bits(s), LabelFile::Io { out, inn }) => {
                io_decode_scoped(s, &out, &inn, &g, PairScope::DistinctPairs)
                    .map_err(|e| e.to_string())
            }
            (SchemeFile::Fo(s), LabelFile::Num(l)) => check_num(s, &g, l, scope),
            (SchemeFile::Pbs(s), LabelFile::Num(l)) => check_num(s, &g, l, scope),
            _ => return Err(kind_mismatch()),
        }
    };
    match checked {
        Ok(true) => ctx.verdict(Verdict::Positive, "verified"),
        Ok(false) => ctx.verdict(
            Verdict::Negative,
            "rejected: the witness decodes to a different graph",
        ),
        Err(e) => ctx.verdict(Verdict::Negative, format!("rejected: {e}")),
    }
}

fn outcome_verdict<T>(ctx: &mut Ctx<'_>, o: &Outcome<T>, found: &str, not_found: &str) -> Verdict {
    let (v, text) = match o {
        Outcome::Found(_) => (Verdict::Positive, found.to_string()),
        Outcome::NotFound => (Verdict::Negative, not_found.to_string()),
        Outcome::Unknown(r) => (Verdict::Unknown, format!("unknown: {r}")),
    };
    ctx.report.outcome = text;
    v
}

pub fn search(a: &SearchArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let scheme = ctx.loader.scheme(&a.scheme)?;
    let g = ctx.loader.graph(&a.graph)?;
    ctx.searched();
    let budget = ctx.budget;
    let outcome: Outcome<LabelFile> = match &scheme {
        SchemeFile::Bits(s) => {
            domain_unknown(find_labeling(s, &g, a.io, budget))?.map(|l| match l {
                Labeling::Plain(l) => LabelFile::Bits(l),
                Labeling::Io { out, inn } => LabelFile::Io { out, inn },
            })
        }
        SchemeFile::Fo(_) | SchemeFile::Pbs(_) if a.io => {
            return Err(usage(
                "io label files hold bit labels; --io needs a bit scheme",
            ))
        }
        SchemeFile::Fo(s) => num_search(s, &g, budget)?,
        SchemeFile::Pbs(s) => num_search(s, &g, budget)?,
    };
    let v = outcome_verdict(
        ctx,
        &outcome,
        "member: labeling found",
        "non-member: no labeling exists",
    );
    if let Outcome::Found(l) = outcome {
        ctx.emit(a.out.as_deref(), &formats::write_labels(&l))?;
    }
    Ok(v)
}

fn num_search<S: Scheme<Label = Vec<u64>>>(
    s: &S,
    g: &Graph,
    budget: SearchBudget,
) -> Result<Outcome<LabelFile>> {
    Ok(
        domain_unknown(find_labeling(s, g, false, budget))?.map(|l| match l {
            Labeling::Plain(l) => LabelFile::Num(l),
            Labeling::Io { .. } => unreachable!("plain search"),
        }),
    )
}

pub fn pointer(a: &PointerArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let g = ctx.loader.graph(&a.graph)?;
    if g.is_directed() {
        return Err(usage("pointer labelings need an undirected graph"));
    }
    ctx.searched();
    let mode = pointer_mode(a.mode);
    let outcome = match a.k {
        Some(k) => pointer_search(&g, mode, a.bijective, k, ctx.budget)
            .map_err(CliError::core)?
            .map(|l| (k, l)),
        None => pointer_number(&g, mode, a.bijective, ctx.budget).map_err(CliError::core)?,
    };
    let v = outcome_verdict(
        ctx,
        &outcome,
        "pointer labeling found",
        "no pointer labeling with this many slots",
    );
    if let Outcome::Found((k, l)) = outcome {
        ctx.report.detail(format!("slots: {k}"));
        ctx.emit(a.out.as_deref(), &formats::write_pointer(&l))?;
    }
    Ok(v)
}

pub fn recognize(a: &RecognizeArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let o = oracle(&a.class)?;
    let g = ctx.loader.graph(&a.graph)?;
    if o.contains(&g) {
        println!("member");
        ctx.verdict(Verdict::Positive, format!("member of {}", o.name()))
    } else {
        println!("non-member");
        ctx.verdict(Verdict::Negative, format!("not a member of {}", o.name()))
    }
}

// ---------------------------------------------------------------------------
// reductions
// ---------------------------------------------------------------------------

fn load_rep(ctx: &mut Ctx<'_>, path: &Path) -> Result<SubgraphRepresentation> {
    let input = ctx.loader.read(path)?;
    let file = parse(&input, formats::parse_sgrep)?;
    let host = ctx.loader.graph(&relative_to(path, &file.host))?;
    SubgraphRepresentation::new(host, file.f, file.ell).map_err(CliError::core)
}

pub fn reduce(c: &ReduceCmd, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    match c {
        ReduceCmd::Verify {
            graph,
            rep,
            bf,
            witness,
        } => {
            let g = ctx.loader.graph(graph)?;
            let checked = if let Some(r) = rep {
                let rep = load_rep(ctx, r)?;
                verify_subgraph(&g, &rep)
            } else {
                let f = ctx.loader.bf(required(
                    bf,
                    "--bf",
                    "algebraic verification (or pass --rep)",
                )?)?;
                let ws = witness
                    .iter()
                    .map(|w| ctx.loader.graph(w))
                    .collect::<Result<Vec<_>>>()?;
                verify_algebraic(&g, &f, &ws)
            };
            match checked {
                Ok(true) => ctx.verdict(Verdict::Positive, "verified"),
                Ok(false) => ctx.verdict(
                    Verdict::Negative,
                    "rejected: the representation gives a different graph",
                ),
                Err(e) => ctx.verdict(Verdict::Negative, format!("rejected: {e}")),
            }
        }
        ReduceCmd::Search {
            graph,
            bf,
            class,
            host,
            out,
        } => {
            let g = ctx.loader.graph(graph)?;
            let f = ctx.loader.bf(bf)?;
            ctx.searched();
            if let Some(name) = class {
                let o = oracle(name)?;
                let outcome =
                    search_algebraic(&g, &f, o.as_ref(), ctx.budget).map_err(CliError::core)?;
                let v = outcome_verdict(
                    ctx,
                    &outcome,
                    "witnesses found",
                    "no witnesses in the class",
                );
                if let Outcome::Found(ws) = outcome {
                    emit_graphs(ctx, out.as_deref(), "witness", &ws)?;
                }
                return Ok(v);
            }
            let host_path = required(host, "--host", "subgraph search")?;
            let h = ctx.loader.graph(host_path)?;
            let outcome = search_subgraph(&g, &h, &f, ctx.budget).map_err(CliError::core)?;
            let v = outcome_verdict(
                ctx,
                &outcome,
                "representation found",
                "no vertex map exists",
            );
            if let Outcome::Found(rep) = outcome {
                let written = std::fs::canonicalize(host_path).map_err(|source| CliError::Io {
                    path: host_path.display().to_string(),
                    source,
                })?;
                let text =
                    formats::write_sgrep(rep.k, &written.display().to_string(), &rep.f, &rep.ell);
                ctx.emit(out.as_deref(), &text)?;
            }
            Ok(v)
        }
        ReduceCmd::Builtin { name, graph, out } => {
            let r: BuiltinReduction = name.parse().map_err(|_| {
                let names: Vec<&str> = BuiltinReduction::catalogue().into_keys().collect();
                usage(format!(
                    "unknown reduction '{name}' (expected one of {})",
                    names.join(", ")
                ))
            })?;
            let g = ctx.loader.graph(graph)?;
            let rep = match r.apply(&g) {
                Ok(rep) => rep,
                Err(e) => return ctx.verdict(Verdict::Negative, format!("not applicable: {e}")),
            };
            let mut host_path = out.clone().into_os_string();
            host_path.push(".host.graph");
            let host_path = PathBuf::from(host_path);
            write_output(&host_path, &formats::write_graph(&rep.host))?;
            ctx.report.witnesses.push(host_path.display().to_string());
            let host_name = host_path
                .file_name()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            ctx.emit(
                Some(out),
                &formats::write_sgrep(rep.k, &host_name, &rep.f, &rep.ell),
            )?;
            ctx.verdict(Verdict::Positive, format!("applied {r}"))
        }
    }
}

/// Write graphs as `<dir>/<stem>-<i>.graph`, or to stdout separated by blank lines.
fn emit_graphs(ctx: &mut Ctx<'_>, dir: Option<&Path>, stem: &str, graphs: &[Graph]) -> Result<()> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d).map_err(|source| CliError::Io {
                path: d.display().to_string(),
                source,
            })?;
            for (i, g) in graphs.iter().enumerate() {
                ctx.emit(
                    Some(&d.join(format!("{stem}-{}.graph", i + 1))),
                    &formats::write_graph(g),
                )?;
            }
        }
        None => {
            let texts: Vec<String> = graphs.iter().map(formats::write_graph).collect();
            ctx.emit(None, &texts.join("\n"))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// formulas and polynomial systems
// ---------------------------------------------------------------------------

fn formula(src: &str) -> Result<Formula> {
    parse_formula(src).map_err(|e| usage(format!("formula: {e}")))
}

fn truth(ctx: &mut Ctx<'_>, b: bool) -> Result<Verdict> {
    println!("{b}");
    ctx.verdict(
        if b {
            Verdict::Positive
        } else {
            Verdict::Negative
        },
        b.to_string(),
    )
}

pub fn fo(c: &FoCmd, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    match c {
        FoCmd::Eval {
            formula: src,
            values,
            n,
            c,
            semantics,
        } => {
            let phi = formula(src)?;
            let a: Vec<u64> = list(values, "value")?;
            let bound = n.checked_pow(*c).ok_or_else(|| usage("n^c overflows"))?;
            let r = match semantics {
                SemanticsArg::Bounded => eval_bounded(&phi, &a, bound),
                SemanticsArg::Infinite => eval_infinite_u64(&phi, &a, bound),
            };
            truth(ctx, r.map_err(CliError::core)?)
        }
        FoCmd::Guard { formula: src } => {
            let out = guard_transform(&formula(src)?).map_err(CliError::core)?;
            println!("{out}");
            ctx.verdict(Verdict::Positive, "transformed")
        }
        FoCmd::Qe { formula: src } => {
            let out = qe_order(&formula(src)?).map_err(CliError::core)?;
            println!("{out}");
            ctx.verdict(Verdict::Positive, "quantifiers eliminated")
        }
        FoCmd::Atoms { formula: src } => {
            let d = atoms_decompose(&formula(src)?).map_err(CliError::core)?;
            for (i, atom) in d.atoms.iter().enumerate() {
                println!("atom {}: {atom}", i + 1);
            }
            print!("{}", formats::write_bf(&d.f));
            ctx.verdict(Verdict::Positive, format!("{} atoms", d.atoms.len()))
        }
        FoCmd::Normalize {
            formula: src,
            n,
            c,
            labels,
            out,
        } => {
            let norm = normalize_linear_atom(&formula(src)?, *n, *c).map_err(CliError::core)?;
            ctx.report
                .detail(format!("normal form: {}", norm.normal_form()));
            ctx.report
                .detail(format!("distinct values: {}", norm.values.len()));
            match labels {
                Some(p) => {
                    let input = ctx.loader.read(p)?;
                    let LabelFile::Num(l) = parse(&input, formats::parse_labels)? else {
                        return Err(usage("normalization rewrites num label files"));
                    };
                    let k = norm.k();
                    if let Some(bad) = l.iter().position(|x| x.len() != k) {
                        return Err(usage(format!(
                            "label {bad} has {} numbers, the atom needs {k}",
                            l[bad].len()
                        )));
                    }
                    let two: Vec<Vec<u64>> = l
                        .iter()
                        .map(|x| {
                            let (a, b) = norm.transform(x);
                            vec![a, b]
                        })
                        .collect();
                    ctx.emit(out.as_deref(), &formats::write_labels(&LabelFile::Num(two)))?;
                }
                None => println!("{}", norm.normal_form()),
            }
            ctx.verdict(Verdict::Positive, "normalized")
        }
    }
}

fn rationals(arg: &str) -> Result<Vec<BigRational>> {
    list(arg, "rational")
}

pub fn pbs(c: &PbsCmd, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let load = |ctx: &mut Ctx<'_>, p: &Path| -> Result<_> {
        let input = ctx.loader.read(p)?;
        parse(&input, formats::parse_pbs)
    };
    match c {
        PbsCmd::Eval { pbs, values } => {
            let r = load(ctx, pbs)?;
            let b = r.eval_rat(&rationals(values)?).map_err(CliError::core)?;
            truth(ctx, b)
        }
        PbsCmd::Transform { pbs, values, out } => {
            let r = load(ctx, pbs)?;
            let t = clear_denominators(&sign_split(&r).map_err(CliError::core)?)
                .map_err(CliError::core)?;
            ctx.report.detail(format!(
                "{} polynomials over {} variables",
                t.polys().len(),
                t.nvars()
            ));
            if let Some(v) = values {
                let a = rationals(v)?;
                if a.len() != r.nvars() {
                    return Err(usage(format!(
                        "expected {} values, got {}",
                        r.nvars(),
                        a.len()
                    )));
                }
                let nat: Vec<String> = split_and_clear_values(&a)
                    .iter()
                    .map(BigInt::to_string)
                    .collect();
                ctx.report.detail(format!("values: {}", nat.join(",")));
            }
            ctx.emit(out.as_deref(), &formats::write_pbs(&t))?;
            ctx.verdict(Verdict::Positive, "transformed")
        }
        PbsCmd::Probe { pbs, n, bound } => {
            let r = load(ctx, pbs)?;
            let count = sign_pattern_probe(&r, *n, *bound).map_err(CliError::core)?;
            println!("{count}");
            ctx.verdict(Verdict::Positive, format!("{count} graphs realized"))
        }
        PbsCmd::Builtin { name, k, out } => {
            let r = match name {
                PbsName::Dot => dot_product_pbs(*k),
                PbsName::Disk => disk_pbs(),
                PbsName::Segment => segment_pbs(),
            };
            ctx.emit(out.as_deref(), &formats::write_pbs(&r))?;
            ctx.verdict(Verdict::Positive, "written")
        }
    }
}

// ---------------------------------------------------------------------------
// diagonal graphs, enumeration, acceptance
// ---------------------------------------------------------------------------

pub fn diag(a: &DiagArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let decoders = match &a.decoders {
        Some(p) => {
            let input = ctx.loader.read(p)?;
            parse(&input, formats::parse_decoder_list)?
        }
        None => diagonal_decoders(),
    };
    ctx.searched();
    let entries = diagonal_class(&decoders, a.prefix, ctx.budget, a.max_candidates)
        .map_err(CliError::core)?;
    if let Some(d) = &a.out_dir {
        std::fs::create_dir_all(d).map_err(|source| CliError::Io {
            path: d.display().to_string(),
            source,
        })?;
    }
    let mut unknown = 0;
    let mut found = 0;
    for e in &entries {
        let head = format!("n={} decoder={} c={}", e.n, e.y, e.z);
        match &e.result {
            DiagonalResult::NonMember(g) => {
                found += 1;
                println!("{head}: non-member");
                let text = formats::write_graph(g);
                match &a.out_dir {
                    Some(d) => {
                        let p = d.join(format!("diag-{}.graph", e.n));
                        write_output(&p, &text)?;
                        ctx.report.witnesses.push(p.display().to_string());
                    }
                    None => print!("{text}"),
                }
            }
            DiagonalResult::AllRepresented => println!("{head}: every graph represented"),
            DiagonalResult::Unknown(r) => {
                unknown += 1;
                println!("{head}: unknown ({r})");
            }
        }
    }
    let summary = format!(
        "{} entries, {found} diagonal graphs, {unknown} unknown",
        entries.len()
    );
    ctx.verdict(
        if unknown > 0 {
            Verdict::Unknown
        } else {
            Verdict::Positive
        },
        summary,
    )
}

pub fn enumerate(a: &EnumerateArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let filter = a.class.as_deref().map(oracle).transpose()?;
    let keep = |g: &Graph| filter.as_ref().map_or(true, |o| o.contains(g));
    let graphs: Vec<Graph> = if a.canonical {
        canonical_graphs(a.n, a.directed, a.loops)
            .map_err(CliError::core)?
            .into_iter()
            .filter(|g| keep(g))
            .collect()
    } else {
        enumerate_graphs(a.n, a.directed, a.loops)
            .map_err(CliError::core)?
            .filter(|g| keep(g))
            .collect()
    };
    if a.count {
        println!("{}", graphs.len());
    } else {
        emit_graphs(ctx, a.out_dir.as_deref(), "graph", &graphs)?;
    }
    ctx.verdict(Verdict::Positive, format!("{} graphs", graphs.len()))
}

pub fn props(a: &PropsArgs, ctx: &mut Ctx<'_>) -> Result<Verdict> {
    let reports = if a.criterion.is_empty() {
        run_all(ctx.seed)
    } else {
        a.criterion
            .iter()
            .map(|&id| {
                run_criterion(id, ctx.seed).ok_or_else(|| {
                    usage(format!(
                        "unknown criterion {id} (criteria are numbered 1 to {})",
                        CRITERIA.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let summary = format!(
        "{} passed, {failed} failed (seed {})",
        reports.len() - failed,
        ctx.seed
    );
    println!("acceptance: {summary}");
    ctx.verdict(
        if failed == 0 {
            Verdict::Positive
        } else {
            Verdict::Negative
        },
        summary,
    )
}
