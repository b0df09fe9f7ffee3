use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use anyhow::anyhow;
use serde_json::json;
use snacs_core::agreement::{
    align_double_annotations, cohens_kappa_exact, per_lemma_agreement, raw_agreement_exact,
    AgreementError,
};
use snacs_core::bio::{
    encode_bio, project_subwords, read_tagged, segment_forms, write_tagged, CharBigramSegmenter,
    TagSequence,
};
use snacs_core::conllulex::{
    read_corpus, validate, Corpus, CorpusError, Diagnostic, LabelDimension, LabelInventory,
    ParseMode, Severity, TargetClass,
};
use snacs_core::eval::{evaluate, split_corpus, Bucket, Split};
use snacs_core::stats::{
    corpus_summary, format_percent, label_distribution, target_entropy_table, DistributionKey,
    EntropyTableOptions, SummaryStats,
};
use snacs_core::tagger::{
    baseline_tag, load_model, save_model, train_baseline, train_crf, BaselineModel, StoredModel,
    TargetMode, TemplateFeatures,
};
use snacs_core::{CrfConfig, EvalReport};

use crate::args::{Cli, Command, CrfArgs, Format, SplitArgs, Subwords};
use crate::output::{emit, fixed, record_line, Table};

/// A failure, split by whether the user can fix it.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

pub type CmdResult<T = ()> = Result<T, CliError>;

trait Classify<T> {
    fn input(self) -> CmdResult<T>;
    fn internal(self) -> CmdResult<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn input(self) -> CmdResult<T> {
        self.map_err(|e| CliError::Input(e.into()))
    }

    fn internal(self) -> CmdResult<T> {
        self.map_err(|e| CliError::Internal(e.into()))
    }
}

fn input_err(msg: impl fmt::Display) -> CliError {
    CliError::Input(anyhow!("{msg}"))
}

struct Ctx {
    inventory: Arc<LabelInventory>,
    format: Format,
    mode: ParseMode,
}

impl Ctx {
    fn load(&self, path: &Path) -> CmdResult<Corpus> {
        match read_corpus(path, self.inventory.clone(), self.mode) {
            Ok(parsed) => {
                if !parsed.diagnostics.is_empty() {
                    log::warn!(
                        "{}: {} diagnostics (run `validate` for details)",
                        path.display(),
                        parsed.diagnostics.len()
                    );
                }
                Ok(parsed.corpus)
            }
            Err(e @ CorpusError::Io { .. }) => Err(CliError::Input(e.into())),
            Err(CorpusError::Invalid(diags)) => Err(input_err(format!(
                "{} is not a valid corpus:\n{}",
                path.display(),
                CorpusError::Invalid(diags)
            ))),
        }
    }
}

pub fn run(cli: Cli) -> CmdResult {
    let inventory = match &cli.inventory {
        Some(p) => LabelInventory::load(p).input()?,
        None => LabelInventory::builtin(),
    };
    let ctx = Ctx {
        inventory: Arc::new(inventory),
        format: cli.format,
        mode: if cli.lenient {
            ParseMode::Lenient
        } else {
            ParseMode::Strict
        },
    };
    match cli.command {
        Command::Validate { corpus } => cmd_validate(&ctx, &corpus),
        Command::Stats { corpus, top } => {
            let c = ctx.load(&corpus)?;
            emit(&stats_tables(&c, top), ctx.format);
            Ok(())
        }
        Command::Entropy {
            corpus,
            min_n,
            dimension,
            estimator,
            exclude_specials,
        } => {
            let c = ctx.load(&corpus)?;
            let opts = EntropyTableOptions {
                min_n,
                dimension,
                estimator,
                include_specials: !exclude_specials,
            };
            emit(&[entropy_table(&c, &opts)], ctx.format);
            Ok(())
        }
        Command::Agree { a, b, min_n } => cmd_agree(&ctx, &a, &b, min_n),
        Command::Bio {
            corpus,
            dimension,
            subwords,
        } => cmd_bio(&ctx, &corpus, dimension, subwords),
        Command::Split {
            corpus,
            split,
            out_dir,
        } => cmd_split(&ctx, &corpus, &split, out_dir.as_deref()),
        Command::TrainBaseline { train, output } => {
            let c = ctx.load(&train)?;
            let m = train_baseline(&c);
            save_model(&StoredModel::<f64>::Baseline(m.clone()), &output).input()?;
            let mut t = Table::new("baseline", "Baseline model", vec!["measure", "value"]);
            let total: usize = m.global.values().sum();
            t.push(
                vec!["lemmas".into(), m.n_lemmas().to_string()],
                json!({"measure": "lemmas", "value": m.n_lemmas()}),
            );
            t.push(
                vec!["targets".into(), total.to_string()],
                json!({"measure": "targets", "value": total}),
            );
            emit(&[t], ctx.format);
            Ok(())
        }
        Command::TrainCrf {
            train,
            dev,
            output,
            dimension,
            crf,
        } => cmd_train_crf(&ctx, &train, dev.as_deref(), &output, dimension, &crf),
        Command::Tag {
            model,
            corpus,
            dimension,
            targets,
        } => cmd_tag(&ctx, &model, &corpus, dimension, targets),
        Command::Eval {
            gold,
            pred,
            dimension,
        } => cmd_eval(&ctx, &gold, &pred, dimension),
        Command::Repro {
            corpus,
            seed,
            splits,
            min_n,
            crf,
            crf_args,
        } => cmd_repro(&ctx, &corpus, seed, splits, min_n, crf.then_some(&crf_args)),
    }
}

fn diagnostic_record(path: &Path, d: &Diagnostic) -> serde_json::Value {
    json!({
        "file": path.display().to_string(),
        "line": d.line,
        "sent_id": d.sent_id,
        "token_id": d.token_id,
        "severity": match d.severity { Severity::Error => "error", Severity::Warning => "warning" },
        "rule": d.rule.name(),
        "message": d.message,
    })
}

fn cmd_validate(ctx: &Ctx, paths: &[std::path::PathBuf]) -> CmdResult {
    let mut total_errors = 0;
    let mut table = Table::new(
        "validation",
        "Validation",
        vec!["file", "sentences", "errors", "warnings"],
    );
    let mut diag_table = Table::new(
        "diagnostics",
        "Diagnostics",
        vec!["file", "diagnostic"],
    );
    for path in paths {
        let parsed = read_corpus(path, ctx.inventory.clone(), ParseMode::Lenient).input()?;
        let mut diags = parsed.diagnostics;
        let seen: HashSet<(String, Option<String>, Option<usize>, String)> = diags
            .iter()
            .map(|d| (d.rule.name().to_owned(), d.sent_id.clone(), d.token_id, d.message.clone()))
            .collect();
        for d in validate(&parsed.corpus, &ctx.inventory) {
            let key = (d.rule.name().to_owned(), d.sent_id.clone(), d.token_id, d.message.clone());
            if !seen.contains(&key) {
                diags.push(d);
            }
        }
        let errors = diags.iter().filter(|d| d.severity == Severity::Error).count();
        let warnings = diags.len() - errors;
        total_errors += errors;
        for d in &diags {
            diag_table.push(
                vec![path.display().to_string(), d.to_string()],
                diagnostic_record(path, d),
            );
        }
        table.push(
            vec![
                path.display().to_string(),
                parsed.corpus.sentences.len().to_string(),
                errors.to_string(),
                warnings.to_string(),
            ],
            json!({
                "file": path.display().to_string(),
                "sentences": parsed.corpus.sentences.len(),
                "errors": errors,
                "warnings": warnings,
            }),
        );
    }
    match ctx.format {
        Format::Text => {
            for row in &diag_table.rows {
                println!("{}: {}", row[0], row[1]);
            }
            emit(&[table], ctx.format);
        }
        Format::Records => emit(&[diag_table, table], ctx.format),
    }
    if total_errors > 0 {
        return Err(input_err(format!("validation found {total_errors} errors")));
    }
    Ok(())
}

fn summary_table(s: &SummaryStats) -> Table {
    let mut t = Table::new(
        "summary",
        "Corpus summary",
        vec!["measure", "count", "types", "% of targets"],
    );
    t.push(
        vec!["sentences".into(), s.n_sentences.to_string(), String::new(), String::new()],
        json!({"measure": "sentences", "count": s.n_sentences}),
    );
    t.push(
        vec!["tokens".into(), s.n_tokens.to_string(), String::new(), String::new()],
        json!({"measure": "tokens", "count": s.n_tokens}),
    );
    t.push(
        vec![
            "targets".into(),
            s.n_targets.to_string(),
            s.n_types.to_string(),
            format_percent(100.0),
        ],
        json!({"measure": "targets", "count": s.n_targets, "types": s.n_types}),
    );
    let pct = |c: usize| {
        if s.n_targets == 0 {
            0.0
        } else {
            100.0 * c as f64 / s.n_targets as f64
        }
    };
    let rows = [
        ("case", s.case),
        ("emphatic", s.emphatic),
        ("adposition", s.adposition),
        ("role = function", s.role_equals_function),
        ("role != function", s.role_differs),
    ];
    for (name, tally) in rows {
        t.push(
            vec![
                name.into(),
                tally.count.to_string(),
                tally.types.to_string(),
                format_percent(pct(tally.count)),
            ],
            json!({
                "measure": name,
                "count": tally.count,
                "types": tally.types,
                "percent": pct(tally.count),
            }),
        );
    }
    t
}

fn lemma_table(c: &Corpus, n_targets: usize, top: Option<usize>) -> Table {
    let mut t = Table::new(
        "lemmas",
        "Target lemmas by class",
        vec!["class", "lemma", "count", "% of targets", "% of class"],
    );
    for klass in TargetClass::ALL {
        let d = label_distribution(c, Some(klass), DistributionKey::Lemma);
        for (lemma, count) in d.entries().iter().take(top.unwrap_or(usize::MAX)) {
            let of_all = 100.0 * *count as f64 / n_targets.max(1) as f64;
            let of_class = d.percent_of(lemma, d.total());
            t.push(
                vec![
                    klass.as_str().into(),
                    lemma.clone(),
                    count.to_string(),
                    format_percent(of_all),
                    format_percent(of_class),
                ],
                json!({
                    "class": klass.as_str(),
                    "lemma": lemma,
                    "count": count,
                    "percent_of_targets": of_all,
                    "percent_of_class": of_class,
                }),
            );
        }
    }
    t
}

fn stats_tables(c: &Corpus, top: Option<usize>) -> Vec<Table> {
    let s = corpus_summary(c);
    vec![summary_table(&s), lemma_table(c, s.n_targets, top)]
}

fn entropy_table(c: &Corpus, opts: &EntropyTableOptions) -> Table {
    let mut t = Table::new(
        "entropy",
        format!(
            "{} entropy of {} labels, lemmas with n >= {}",
            opts.estimator, opts.dimension, opts.min_n
        ),
        vec!["lemma", "entropy", "n"],
    );
    for row in target_entropy_table::<f64>(c, opts) {
        t.push(
            vec![row.lemma.clone(), fixed(row.entropy, 2), row.n.to_string()],
            &row,
        );
    }
    t
}

const DIMENSIONS: [LabelDimension; 3] = [
    LabelDimension::Scene,
    LabelDimension::Function,
    LabelDimension::Construal,
];

fn cmd_agree(ctx: &Ctx, a: &Path, b: &Path, min_n: usize) -> CmdResult {
    let (ca, cb) = (ctx.load(a)?, ctx.load(b)?);
    let pairs = align_double_annotations(&ca, &cb).input()?;
    if pairs.is_empty() {
        return Err(input_err("the two corpora share no labeled targets"));
    }
    let mut overall = Table::new(
        "agreement",
        format!("Agreement on {} doubly annotated targets", pairs.len()),
        vec!["dimension", "raw", "kappa"],
    );
    for dim in DIMENSIONS {
        let raw = raw_agreement_exact(&pairs, dim).internal()?;
        let raw_f = *raw.numer() as f64 / *raw.denom() as f64;
        let (kappa_cell, kappa_val, kappa_exact) = match cohens_kappa_exact(&pairs, dim) {
            Ok(k) => {
                let v = *k.numer() as f64 / *k.denom() as f64;
                (fixed(v, 2), Some(v), Some(k.to_string()))
            }
            Err(AgreementError::DegenerateMarginals) => ("undefined".into(), None, None),
            Err(e) => return Err(CliError::Internal(e.into())),
        };
        overall.push(
            vec![dim.to_string(), fixed(raw_f, 2), kappa_cell],
            json!({
                "dimension": dim,
                "pairs": pairs.len(),
                "raw": raw_f,
                "raw_exact": raw.to_string(),
                "kappa": kappa_val,
                "kappa_exact": kappa_exact,
            }),
        );
    }
    let mut per = Table::new(
        "lemma_agreement",
        format!("Raw agreement for lemmas with at least {min_n} pairs"),
        vec!["lemma", "n", "scene", "function", "construal"],
    );
    for row in per_lemma_agreement::<f64>(&pairs, min_n) {
        per.push(
            vec![
                row.lemma.clone(),
                row.n.to_string(),
                fixed(row.scene, 2),
                fixed(row.function, 2),
                fixed(row.construal, 2),
            ],
            &row,
        );
    }
    emit(&[overall, per], ctx.format);
    Ok(())
}

fn print_tagged(format: Format, rows: Vec<(String, Vec<String>, TagSequence)>) {
    match format {
        Format::Text => {
            let text = write_tagged(rows.iter().map(|(_, f, t)| (f.as_slice(), t)));
            print!("{text}");
        }
        Format::Records => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(id, forms, seq)| {
                    json!({
                        "sent_id": id,
                        "forms": forms,
                        "tags": seq.tags.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "alignment": seq.alignment,
                    })
                })
                .collect();
            print!("{}", record_line(json!({"table": "tags", "rows": rows})));
        }
    }
}

fn forms(s: &snacs_core::conllulex::Sentence) -> Vec<String> {
    s.tokens.iter().map(|t| t.form.clone()).collect()
}

fn cmd_bio(ctx: &Ctx, path: &Path, dim: LabelDimension, subwords: Subwords) -> CmdResult {
    let c = ctx.load(path)?;
    let mut rows = Vec::new();
    for s in &c.sentences {
        let seq = encode_bio(s, &c.inventory, dim).input()?;
        let (units, seq) = match subwords {
            Subwords::None => (forms(s), seq),
            Subwords::Bigram => {
                let seg = segment_forms(&CharBigramSegmenter, s.tokens.iter().map(|t| t.form.as_str()));
                let p = project_subwords(&seq, &seg).internal()?;
                (seg.into_iter().flatten().collect(), p)
            }
        };
        rows.push((s.sent_id.clone(), units, seq));
    }
    print_tagged(ctx.format, rows);
    Ok(())
}

fn make_split(c: &Corpus, args: &SplitArgs) -> CmdResult<Split> {
    split_corpus(c, args.ratios, args.seed).input()
}

fn cmd_split(ctx: &Ctx, path: &Path, args: &SplitArgs, out_dir: Option<&Path>) -> CmdResult {
    let c = ctx.load(path)?;
    let split = make_split(&c, args)?;
    let mut sizes = Table::new(
        "split",
        format!("Split with seed {}", split.seed),
        vec!["bucket", "sentences", "tokens", "targets"],
    );
    for b in Bucket::ALL {
        let part = split.select(&c, b);
        let targets = part.targets().len();
        sizes.push(
            vec![
                b.to_string(),
                part.sentences.len().to_string(),
                part.n_tokens().to_string(),
                targets.to_string(),
            ],
            json!({
                "bucket": b,
                "sentences": part.sentences.len(),
                "tokens": part.n_tokens(),
                "targets": targets,
            }),
        );
        if let Some(dir) = out_dir {
            std::fs::create_dir_all(dir).input()?;
            let file = dir.join(format!("{b}.conllulex"));
            std::fs::write(&file, snacs_core::conllulex::write_corpus(&part))
                .map_err(|e| input_err(format!("cannot write {}: {e}", file.display())))?;
        }
    }
    let mut members = Table::new("membership", "Membership", vec!["sent_id", "bucket"]);
    for (id, b) in &split.membership {
        members.push(vec![id.clone(), b.to_string()], json!({"sent_id": id, "bucket": b}));
    }
    if let Some(dir) = out_dir {
        let file = dir.join("split.json");
        let text = serde_json::to_string_pretty(&split).internal()?;
        std::fs::write(&file, text + "\n")
            .map_err(|e| input_err(format!("cannot write {}: {e}", file.display())))?;
    }
    match ctx.format {
        Format::Text => emit(&[sizes], ctx.format),
        Format::Records => emit(&[sizes, members], ctx.format),
    }
    Ok(())
}

fn crf_config(a: &CrfArgs) -> CrfConfig {
    CrfConfig {
        learning_rate: a.lr,
        epochs: a.epochs,
        l2: a.l2,
        batch_size: a.batch_size,
        seed: a.crf_seed,
        min_feature_count: a.min_feature_count,
    }
}

fn cmd_train_crf(
    ctx: &Ctx,
    train: &Path,
    dev: Option<&Path>,
    output: &Path,
    dim: LabelDimension,
    args: &CrfArgs,
) -> CmdResult {
    let train = ctx.load(train)?;
    let dev = match dev {
        Some(p) => ctx.load(p)?,
        None => Corpus::new(Vec::new(), ctx.inventory.clone()),
    };
    let features = TemplateFeatures::new(ctx.inventory.clone());
    let out = train_crf(&train, &dev, dim, &crf_config(args), &features).internal()?;
    save_model(&StoredModel::Crf(out.model), output).input()?;
    let mut t = Table::new(
        "training",
        format!("CRF training on {dim} labels, best epoch {}", out.best_epoch),
        vec!["epoch", "objective", "dev F1"],
    );
    for e in &out.history {
        t.push(
            vec![
                e.epoch.to_string(),
                fixed(e.objective, 4),
                e.dev_f1.map_or("-".into(), |f| fixed(100.0 * f, 1)),
            ],
            e,
        );
    }
    emit(&[t], ctx.format);
    Ok(())
}

fn cmd_tag(
    ctx: &Ctx,
    model: &Path,
    path: &Path,
    dim: LabelDimension,
    targets: TargetMode,
) -> CmdResult {
    let model = load_model::<f64>(model).input()?;
    let c = ctx.load(path)?;
    let mut rows = Vec::new();
    match &model {
        StoredModel::Baseline(m) => {
            for (s, seq) in c.sentences.iter().zip(baseline_tag(m, &c, targets, dim)) {
                rows.push((s.sent_id.clone(), forms(s), seq));
            }
        }
        StoredModel::Crf(m) => {
            let features = TemplateFeatures::new(ctx.inventory.clone());
            for s in &c.sentences {
                let seq = m.tag_sentence(&features, s).input()?;
                rows.push((s.sent_id.clone(), forms(s), seq));
            }
        }
    }
    print_tagged(ctx.format, rows);
    Ok(())
}

fn report_row(t: &mut Table, name: &str, r: &EvalReport) {
    t.push(
        vec![
            name.to_owned(),
            r.dimension.to_string(),
            fixed(100.0 * r.precision, 1),
            fixed(100.0 * r.recall, 1),
            fixed(100.0 * r.f1, 1),
            r.gold_b.to_string(),
            r.pred_b.to_string(),
        ],
        json!({"name": name, "report": r}),
    );
}

fn gold_tags(c: &Corpus, dim: LabelDimension) -> CmdResult<Vec<TagSequence>> {
    c.sentences
        .iter()
        .map(|s| encode_bio(s, &c.inventory, dim).input())
        .collect()
}

fn cmd_eval(ctx: &Ctx, gold: &Path, pred: &Path, dim: LabelDimension) -> CmdResult {
    let c = ctx.load(gold)?;
    let text = std::fs::read_to_string(pred)
        .map_err(|e| input_err(format!("cannot read {}: {e}", pred.display())))?;
    let tagged = read_tagged(&text).input()?;
    let gold_seqs = gold_tags(&c, dim)?;
    for (i, (s, t)) in c.sentences.iter().zip(&tagged).enumerate() {
        if forms(s) != t.forms {
            return Err(input_err(format!(
                "sentence {} ({}) has different tokens in the predictions",
                i + 1,
                s.sent_id
            )));
        }
    }
    let pred: Vec<TagSequence> = tagged.into_iter().map(|t| t.tags).collect();
    let report = evaluate::<f64>(&gold_seqs, &pred, dim).input()?;
    let mut t = Table::new("eval", "Evaluation", HEADERS.to_vec());
    report_row(&mut t, "predictions", &report);
    emit(&[t], ctx.format);
    Ok(())
}

const HEADERS: [&str; 7] = ["system", "dimension", "P", "R", "F1", "gold", "predicted"];

fn baseline_scores(
    model: &BaselineModel,
    test: &Corpus,
    mode: TargetMode,
    dim: LabelDimension,
) -> CmdResult<EvalReport> {
    let gold = gold_tags(test, dim)?;
    let pred = baseline_tag(model, test, mode, dim);
    evaluate::<f64>(&gold, &pred, dim).internal()
}

fn cmd_repro(
    ctx: &Ctx,
    path: &Path,
    seed: u64,
    splits: usize,
    min_n: usize,
    crf: Option<&CrfArgs>,
) -> CmdResult {
    let c = ctx.load(path)?;
    let mut tables = stats_tables(&c, None);
    tables.push(entropy_table(
        &c,
        &EntropyTableOptions {
            min_n,
            ..EntropyTableOptions::default()
        },
    ));

    let dims = [LabelDimension::Scene, LabelDimension::Function];
    let modes = [TargetMode::Unknown, TargetMode::Known];
    let mut f1s = vec![Vec::new(); dims.len() * modes.len()];
    let mut test_size = 0;
    for i in 0..splits.max(1) {
        let split_args = SplitArgs {
            seed: seed.wrapping_add(i as u64),
            ratios: snacs_core::eval::DEFAULT_RATIOS,
        };
        let split = make_split(&c, &split_args)?;
        let train = split.select(&c, Bucket::Train);
        let test = split.select(&c, Bucket::Test);
        if i == 0 {
            test_size = test.sentences.len();
        }
        let model = train_baseline(&train);
        for (mi, &mode) in modes.iter().enumerate() {
            for (di, &dim) in dims.iter().enumerate() {
                let r = baseline_scores(&model, &test, mode, dim)?;
                f1s[mi * dims.len() + di].push(100.0 * r.f1);
            }
        }
    }
    let mut base = Table::new(
        "baseline",
        format!(
            "Baseline test F1 over {} splits (seeds {}..), test size {}",
            splits.max(1),
            seed,
            test_size
        ),
        vec!["targets", "dimension", "mean F1", "min", "max"],
    );
    for (mi, &mode) in modes.iter().enumerate() {
        for (di, &dim) in dims.iter().enumerate() {
            let v = &f1s[mi * dims.len() + di];
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            let min = v.iter().copied().fold(f64::INFINITY, f64::min);
            let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mode_name = match mode {
                TargetMode::Known => "known",
                TargetMode::Unknown => "unknown",
            };
            base.push(
                vec![
                    mode_name.into(),
                    dim.to_string(),
                    fixed(mean, 1),
                    fixed(min, 1),
                    fixed(max, 1),
                ],
                json!({
                    "targets": mode_name,
                    "dimension": dim,
                    "mean_f1": mean,
                    "min_f1": min,
                    "max_f1": max,
                    "f1": v,
                    "test_size": test_size,
                }),
            );
        }
    }
    tables.push(base);

    if let Some(args) = crf {
        let split = make_split(
            &c,
            &SplitArgs {
                seed,
                ratios: snacs_core::eval::DEFAULT_RATIOS,
            },
        )?;
        let [train, dev, test] = Bucket::ALL.map(|b| split.select(&c, b));
        let baseline = train_baseline(&train);
        let features = TemplateFeatures::new(ctx.inventory.clone());
        let mut t = Table::new(
            "crf",
            format!("CRF against the baseline on split seed {seed}"),
            HEADERS.to_vec(),
        );
        for dim in dims {
            let out = train_crf(&train, &dev, dim, &crf_config(args), &features).internal()?;
            for (name, part) in [("dev", &dev), ("test", &test)] {
                let gold = gold_tags(part, dim)?;
                let pred = part
                    .sentences
                    .iter()
                    .map(|s| out.model.tag_sentence(&features, s))
                    .collect::<Result<Vec<_>, _>>()
                    .internal()?;
                let r = evaluate::<f64>(&gold, &pred, dim).internal()?;
                report_row(&mut t, &format!("crf {name}"), &r);
                let b = baseline_scores(&baseline, part, TargetMode::Unknown, dim)?;
                report_row(&mut t, &format!("baseline {name}"), &b);
            }
        }
        tables.push(t);
    }
    emit(&tables, ctx.format);
    Ok(())
}
