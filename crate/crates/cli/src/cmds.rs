//! One function per verb. Each returns the text to print and a pass flag;
//! input and usage problems come back as errors (exit code 2).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_rational::BigRational;
use serde_json::json;
use sha2::{Digest, Sha256};

use twistbench::classify::{
    compare_rows, real_text, solve_three_twists, solve_two_twists, Certificate, ClassRow, RowComparison,
    THREE_TWIST_REFERENCE, TWO_TWIST_REFERENCE,
};
use twistbench::exactnum::{
    d_numbers_q5_in_window, is_d_number, sqrt2_obstruction_scan_detailed, QuadFieldElement, RootOfUnity,
};
use twistbench::metricgrp::{enumerate_forms, filter_by_twists, isometry_classes, metric_modular_data, FiniteAbelianGroup, TwistFilter};
use twistbench::moddata::{fixture, fixture_names, galois_permutation, validate, ModularData, Status};
use twistbench::sl2data::{
    admissible_sums, parse_product, rep_table_csv, twist_candidates, LEVEL12, LEVEL8_THREE_EIGENVALUES, LEVEL8_TWO_EIGENVALUES,
};
use twistbench::twistdbl::{classify_doubles_by_twistcount, cocycle_by_index, h3_order, twisted_double};

use crate::{ClassifyArgs, DnumberArgs, DoubleArgs, FixturesArgs, GaloisArgs, MetricArgs, Outcome, Sl2Args};

fn pass(text: String) -> Result<Outcome> {
    Ok(Outcome { text, ok: true })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load(path: &str) -> Result<ModularData> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    if text.trim().is_empty() {
        bail!("{path} is empty");
    }
    ModularData::from_json(&text).map_err(|e| anyhow!("{path}: {e}"))
}

fn roots(list: &str) -> Result<BTreeSet<RootOfUnity>> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_product(t).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn set_text(s: &BTreeSet<RootOfUnity>) -> String {
    s.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn spectrum_text(md: &ModularData) -> String {
    let sp = md.twist_spectrum();
    let parts: Vec<String> = sp.entries.iter().map(|(z, d)| format!("{z}: {}", real_text(d))).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn verify(file: &str, json: bool) -> Result<Outcome> {
    let md = load(file)?;
    let report = validate(&md);
    let ok = report.passed();
    if json {
        let v = json!({ "report": report, "twist_spectrum": md.twist_spectrum() });
        return Ok(Outcome { text: pretty(&v), ok });
    }
    let mut out = String::new();
    writeln!(out, "{}", report.summary())?;
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        if c.detail.is_empty() {
            writeln!(out, "  [{tag}] {}", c.name.label())?;
        } else {
            writeln!(out, "  [{tag}] {}: {}", c.name.label(), c.detail)?;
        }
    }
    writeln!(out, "twist spectrum {}", spectrum_text(&md))?;
    Ok(Outcome { text: out, ok })
}

pub fn metric(a: &MetricArgs, json: bool) -> Result<Outcome> {
    let g = FiniteAbelianGroup::parse(&a.group).map_err(|e| anyhow!(e))?;
    let mut forms = enumerate_forms(&g)?;
    if a.classes {
        forms = isometry_classes(&forms)?.into_iter().map(|c| c[0].clone()).collect();
    }
    if let Some(t) = &a.twists {
        let mode = if a.subset { TwistFilter::Subset } else { TwistFilter::Exact };
        forms = filter_by_twists(&forms, &roots(t)?, mode);
    }
    let rows: Vec<(String, String, String)> = forms
        .iter()
        .map(|q| {
            let md = metric_modular_data(q);
            let xi = md.central_charge().map(|x| x.to_string()).unwrap_or_else(|_| "?".into());
            (q.to_string(), set_text(&q.twist_set()), xi)
        })
        .collect();
    if json {
        let v: Vec<_> = rows.iter().map(|(f, t, x)| json!({ "form": f, "twists": t, "xi": x })).collect();
        return pass(pretty(&json!({ "group": g.to_string(), "count": rows.len(), "forms": v })));
    }
    let mut out = format!("{} forms on {g}\n", rows.len());
    if a.list {
        for (f, t, x) in &rows {
            writeln!(out, "{f}  twists {{{t}}}  ξ = {x}")?;
        }
    }
    pass(out)
}

pub fn double(a: &DoubleArgs, json: bool) -> Result<Outcome> {
    let groups: Vec<FiniteAbelianGroup> =
        a.group.iter().map(|s| FiniteAbelianGroup::parse(s).map_err(|e| anyhow!(e))).collect::<Result<_>>()?;
    if a.scan {
        let rows = classify_doubles_by_twistcount(&groups, a.max_twists)?;
        if json {
            return pass(pretty(&rows));
        }
        let mut out = String::from("group,omega_index,rank,fs_exponent,twists\n");
        for r in &rows {
            let tw: Vec<String> = r.twists.iter().map(|t| t.to_string()).collect();
            writeln!(out, "{},{},{},{},\"{}\"", r.group, r.omega_index, r.rank, r.fs_exponent, tw.join(" "))?;
        }
        return pass(out);
    }
    let [g] = groups.as_slice() else {
        bail!("give one --group unless --scan is set");
    };
    if a.omega_index >= h3_order(g) {
        bail!("omega index {} out of range: H³({g}) has {} classes", a.omega_index, h3_order(g));
    }
    let w = cocycle_by_index(g, a.omega_index)?;
    let d = twisted_double(&w)?;
    let report = validate(&d.data);
    let traces = a.traces.then(|| d.trace_tests());
    let ok = report.passed() && traces.as_ref().map_or(true, |t| t.passed());
    if let Some(path) = &a.emit {
        fs::write(path, d.data.to_json_pretty() + "\n").with_context(|| format!("writing {path}"))?;
    }
    if json {
        let v = json!({ "group": g.to_string(), "omega": w.to_string(), "report": report, "traces": traces });
        return Ok(Outcome { text: pretty(&v), ok });
    }
    let mut out = format!("Z(Vec_{g}^ω), ω = {w}\n{}\ntwist spectrum {}\n", report.summary(), spectrum_text(&d.data));
    if let Some(t) = traces {
        let zero = t.zero_trace.iter().filter(|c| c.passed).count();
        let sq = t.squared_trace.iter().filter(|c| c.passed).count();
        writeln!(
            out,
            "zero trace {zero}/{} pass, squared trace {sq}/{} pass",
            t.zero_trace.len(),
            t.squared_trace.len()
        )?;
    }
    Ok(Outcome { text: out, ok })
}

fn csv_rows(rows: &[ClassRow]) -> String {
    let mut out = String::from("name,classes,fpdim,twists,N,listed\n");
    for r in rows {
        let n: Vec<String> = r.n.iter().map(u64::to_string).collect();
        out.push_str(&format!(
            "\"{}\",{},\"{}\",\"{}\",{},{}\n",
            r.name,
            r.classes,
            r.fpdim,
            r.twists,
            n.join(" "),
            if r.in_reference_table { "yes" } else { "no" }
        ));
    }
    out
}

fn cert_lines(out: &mut String, indent: &str, certs: &[Certificate]) {
    for c in certs {
        let tag = match c.evidence {
            twistbench::classify::Evidence::Computed => "computed",
            twistbench::classify::Evidence::Cited => "cited",
        };
        let _ = writeln!(out, "{indent}[{tag}] {}", c.claim);
    }
}

fn comparison_text(cmp: &[RowComparison]) -> String {
    let mut out = String::from("row,reference,computed,fpdim,N,agrees\n");
    for c in cmp {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "\"{}\",{},{},{},{},{}\n",
            c.name,
            show(c.reference_classes),
            show(c.computed_classes),
            c.fpdim_matches,
            c.n_matches,
            c.agrees()
        ));
    }
    out
}

pub fn classify(a: &ClassifyArgs, json: bool) -> Result<Outcome> {
    if a.twists == 2 {
        let r = solve_two_twists()?;
        let cmp = compare_rows(&r.rows, TWO_TWIST_REFERENCE);
        let ok = !a.compare || cmp.iter().all(RowComparison::agrees);
        if json {
            let v = if a.compare { json!({ "report": r, "comparison": cmp }) } else { json!(r) };
            return Ok(Outcome { text: pretty(&v), ok });
        }
        let mut out = csv_rows(&r.rows);
        out.push_str("\"family: twists {1, −1}, D = 2^(2m), ξ = ±1\",infinite,\"2^(2m)\",\"-1\",2,yes\n");
        if a.compare {
            out.push('\n');
            out.push_str(&comparison_text(&cmp));
        }
        if !a.no_certs {
            out.push('\n');
            for c in &r.cases {
                let sols = c.solution_text();
                let _ = writeln!(
                    out,
                    "N={} {:?}{}",
                    c.n,
                    c.status,
                    if sols.is_empty() { String::new() } else { format!(": {}", sols.join("; ")) }
                );
                cert_lines(&mut out, "    ", &c.certificates);
            }
        }
        return Ok(Outcome { text: out, ok });
    }
    let r = solve_three_twists()?;
    let cmp = compare_rows(&r.rows, THREE_TWIST_REFERENCE);
    let ok = !a.compare || cmp.iter().all(RowComparison::agrees);
    if json {
        let v = if a.compare { json!({ "report": r, "comparison": cmp }) } else { json!(r) };
        return Ok(Outcome { text: pretty(&v), ok });
    }
    let mut out = csv_rows(&r.rows);
    out.push_str("\"family: twists {1, ζ3, ζ3²}, D = 3^m\",infinite,\"3^m\",\"ζ3, ζ3²\",3,yes\n");
    out.push_str("\nN,count,reference\n");
    for p in &r.per_n {
        let show = |x: Option<usize>| x.map_or("infinite".to_string(), |v| v.to_string());
        let _ = writeln!(out, "{},{},{}", p.n, show(p.count), p.reference.map_or("-".to_string(), |v| v.to_string()));
    }
    if a.compare {
        out.push('\n');
        out.push_str(&comparison_text(&cmp));
    }
    if !a.no_certs {
        out.push_str("\nscope\n");
        cert_lines(&mut out, "    ", &r.scope);
        for c in &r.cases {
            let xi = c.xi.map_or(String::new(), |x| format!(" ξ={x}"));
            let _ = writeln!(out, "N={} T={}{xi} {:?} found={}", c.n, c.twist_text(), c.status, c.found);
            cert_lines(&mut out, "    ", &c.certificates);
        }
        for row in r.rows.iter().filter(|row| row.note.is_some()) {
            let _ = writeln!(out, "note {}: {}", row.name, row.note.as_deref().unwrap_or(""));
        }
    }
    Ok(Outcome { text: out, ok })
}

pub fn sl2(a: &Sl2Args, json: bool) -> Result<Outcome> {
    if let Some(m) = a.table {
        return pass(rep_table_csv(m as usize)?);
    }
    if let Some(spec) = &a.admissible {
        let sums = admissible_sums(&roots(spec)?)?;
        if json {
            return pass(pretty(&sums));
        }
        return pass(sums.iter().map(|s| format!("{s}\n")).collect());
    }
    if let Some(spec) = &a.candidates {
        let cands = twist_candidates(&roots(spec)?)?;
        if json {
            return pass(pretty(&cands));
        }
        let mut out = String::from("gamma,xi,twists\n");
        for c in &cands {
            writeln!(out, "{},{},\"{}\"", c.gamma, c.xi, set_text(&c.twists))?;
        }
        return pass(out);
    }
    if a.regenerate {
        let tables = [
            ("level 8, three eigenvalues", LEVEL8_THREE_EIGENVALUES),
            ("level 8, two eigenvalues", LEVEL8_TWO_EIGENVALUES),
            ("level 12", LEVEL12),
        ];
        let mut out = String::new();
        let mut ok = true;
        for (name, rows) in tables {
            let bad: Vec<String> = rows
                .iter()
                .filter_map(|r| {
                    let m = r.mismatches();
                    (!m.is_empty()).then(|| {
                        let got = r.regenerate().map_or("no candidate".to_string(), |c| format!("recomputed {{{}}}", set_text(&c.twists)));
                        format!("{} γ={}: printed {{{}}} differs in {}; {got}", r.spectrum, r.gamma, r.twists, m.join(", "))
                    })
                })
                .collect();
            ok &= bad.is_empty();
            writeln!(out, "{name}: {} rows, {} mismatches", rows.len(), bad.len())?;
            for b in bad {
                writeln!(out, "    {b}")?;
            }
        }
        return Ok(Outcome { text: out, ok });
    }
    bail!("give one of --table, --admissible, --candidates, --regenerate")
}

fn rational(s: &str) -> Result<BigRational> {
    s.parse::<BigRational>().map_err(|_| anyhow!("bad rational {s:?}"))
}

pub fn dnumber(a: &DnumberArgs, json: bool) -> Result<Outcome> {
    if let Some(w) = &a.window {
        let (lo, hi) = (rational(&w[0])?, rational(&w[1])?);
        let list = d_numbers_q5_in_window(5, &lo, &hi);
        let text: Vec<String> = list.iter().map(|x| x.to_string()).collect();
        if json {
            return pass(pretty(&json!({ "low": w[0], "high": w[1], "d_numbers": text })));
        }
        return pass(format!("{} d-numbers with conjugates in ({}, {})\n{}", text.len(), w[0], w[1], text.iter().map(|t| format!("{t}\n")).collect::<String>()));
    }
    if let Some(s) = &a.sqrt2_scan {
        let scan = sqrt2_obstruction_scan_detailed(s[0], s[1]);
        if json {
            return pass(pretty(&scan));
        }
        let mut out = format!(
            "{} candidates, {} totally ≥ 2, {} with α − 1 a d-number\n",
            scan.scanned,
            scan.totally_geq_two,
            scan.hits.len()
        );
        for h in &scan.hits {
            writeln!(out, "{h:?}")?;
        }
        return pass(out);
    }
    let [x, y] = a.values.as_slice() else {
        bail!("give a and b for a + b√d, or --window, or --sqrt2-scan");
    };
    let q = QuadFieldElement::new(a.d, rational(x)?, rational(y)?)?;
    let verdict = is_d_number(&q)?;
    if json {
        return pass(pretty(&json!({
            "value": q.to_string(),
            "norm": q.norm().to_string(),
            "trace": q.trace().to_string(),
            "d_number": verdict,
        })));
    }
    pass(format!("{q}: trace {}, norm {}, d-number {verdict}\n", q.trace(), q.norm()))
}

pub fn galois(a: &GaloisArgs, json: bool) -> Result<Outcome> {
    let md = match (&a.file, &a.fixture) {
        (Some(f), None) => load(f)?,
        (None, Some(name)) => fixture(name)?,
        _ => bail!("give a file or --fixture"),
    };
    let p = galois_permutation(&md, a.k)?;
    if json {
        return Ok(Outcome { text: pretty(&p), ok: p.t_relation });
    }
    let cycles: Vec<String> = p.perm.iter().enumerate().map(|(x, y)| format!("{x}→{y}")).collect();
    Ok(Outcome {
        text: format!("k = {}: {}\nt relation holds: {}\n", p.k, cycles.join(" "), p.t_relation),
        ok: p.t_relation,
    })
}

fn sha_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn fixture_text(name: &str) -> Result<String> {
    Ok(fixture(name)?.to_json_pretty() + "\n")
}

pub fn fixtures(a: &FixturesArgs, json: bool) -> Result<Outcome> {
    if let Some(dir) = &a.emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {dir}"))?;
        let mut sums = String::new();
        for name in fixture_names() {
            let text = fixture_text(name)?;
            let file = format!("{name}.json");
            fs::write(Path::new(dir).join(&file), &text)?;
            writeln!(sums, "{}  {file}", sha_hex(text.as_bytes()))?;
        }
        fs::write(Path::new(dir).join("SHA256SUMS"), &sums)?;
        return pass(format!("wrote {} fixtures to {dir}\n", fixture_names().len()));
    }
    if let Some(dir) = &a.check {
        let sums = fs::read_to_string(Path::new(dir).join("SHA256SUMS")).with_context(|| format!("reading {dir}/SHA256SUMS"))?;
        let mut out = String::new();
        let mut ok = true;
        for name in fixture_names() {
            let file = format!("{name}.json");
            let on_disk = fs::read(Path::new(dir).join(&file)).with_context(|| format!("reading {file}"))?;
            let listed = sums.lines().find_map(|l| l.strip_suffix(&format!("  {file}"))).unwrap_or("");
            let same_bytes = on_disk == fixture_text(name)?.as_bytes();
            let sum_ok = listed == sha_hex(&on_disk);
            ok &= same_bytes && sum_ok;
            writeln!(out, "{file}: checksum {}, matches built-in {}", if sum_ok { "ok" } else { "BAD" }, same_bytes)?;
        }
        return Ok(Outcome { text: out, ok });
    }
    let mut rows = Vec::new();
    for name in fixture_names() {
        let md = fixture(name)?;
        let report = validate(&md);
        rows.push((name.to_string(), report.summary(), report.passed()));
    }
    let ok = rows.iter().all(|r| r.2);
    if json {
        let v: Vec<_> = rows.iter().map(|(n, s, p)| json!({ "name": n, "summary": s, "passed": p })).collect();
        return Ok(Outcome { text: pretty(&v), ok });
    }
    Ok(Outcome { text: rows.iter().map(|(n, s, _)| format!("{n}: {s}\n")).collect(), ok })
}
