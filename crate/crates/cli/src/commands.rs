use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::json;
use wapkit::amalgamation::{amalgam_exists, cap_counterexample, OracleConfig};
use wapkit::claims::{run_claim, ClaimOverrides, CATALOG};
use wapkit::classes::{is_member, members_up_to, violations, ClassId};
use wapkit::limits::{generic_chain_with, subdivided_tree, Action, ChainConfig};
use wapkit::structures::{from_json, to_dot, to_json, FinStructure, Signature, DEFAULT_ENUM_CAP};
use wapkit::Error;

use crate::{Cli, Command, Gadget, LimitKind};

type Res<T> = Result<T, Box<dyn std::error::Error>>;

// a closed pipe surfaces as an error instead of a panic
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

pub fn run(cli: &Cli) -> Res<u8> {
    match &cli.command {
        Command::Check { class, file } => check(class, file),
        Command::Enumerate { class, n, out } => enumerate(cli, class, *n, out.as_deref()),
        Command::Demo { gadget, set, member } => {
            let class = match gadget {
                Gadget::K5 => ClassId::K5,
                Gadget::P => ClassId::P,
                Gadget::G => ClassId::G,
                Gadget::Ga => match set {
                    Some(a) => ClassId::Ga(a.clone()),
                    None => ClassId::ga([4, 5])?,
                },
            };
            demo(cli, &class, member.as_deref())
        }
        Command::Verify {
            claim,
            set_a,
            set_b,
            ext,
        } => {
            if claim == "list" {
                for c in CATALOG.iter() {
                    out!("{:20} {}", c.id, c.summary);
                }
                return Ok(0);
            }
            let ov = ClaimOverrides {
                cap_n: cli.cap_n,
                cap_sum: cli.cap_sum,
                seed: Some(cli.seed),
                ext: *ext,
                set_a: set_a.clone(),
                set_b: set_b.clone(),
            };
            let cert = run_claim(claim, &ov)?;
            out!("{}", cert.to_json());
            Ok(if cert.passed() { 0 } else { 1 })
        }
        Command::Limit { kind } => limit(cli, kind),
    }
}

fn read_structure(path: &Path) -> Res<FinStructure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(from_json(&text)?)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => out!("{text}"),
    }
    Ok(())
}

fn check(class: &ClassId, file: &Path) -> Res<u8> {
    let g = read_structure(file)?;
    let found = violations(class, &g)?;
    let member = found.is_empty();
    let out = json!({ "class": class, "member": member, "violations": found });
    out!("{}", serde_json::to_string_pretty(&out)?);
    Ok(if member { 0 } else { 1 })
}

fn enumerate(cli: &Cli, class: &ClassId, n: usize, out: Option<&Path>) -> Res<u8> {
    let cap = cli.cap_n.unwrap_or(DEFAULT_ENUM_CAP);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            value: n,
            cap,
        }
        .into());
    }
    let mut levels = members_up_to(class, n)?;
    let level = levels.pop().unwrap_or_default();
    if let Some(path) = out {
        let items: Vec<&FinStructure> = level.iter().collect();
        write_or_print(Some(path), &serde_json::to_string_pretty(&items)?)?;
    }
    if cli.json {
        out!("{}", json!({ "class": class, "n": n, "count": level.len() }));
    } else {
        out!("{}", level.len());
    }
    Ok(0)
}

fn default_member(class: &ClassId) -> Res<FinStructure> {
    Ok(match class {
        ClassId::K5 => FinStructure::vl5(&[0], &[])?,
        ClassId::P => FinStructure::st(1, &[], &[])?,
        _ => FinStructure::graph(2, &[(0, 1)])?,
    })
}

fn describe(g: &FinStructure) -> String {
    match g.sig() {
        Signature::Vl5Graph => {
            let labels: Vec<String> = g.vertices().map(|v| format!("{v}:{}", g.label(v))).collect();
            format!("vertices [{}] edges {:?}", labels.join(" "), g.edges())
        }
        Signature::PlainGraph => format!("{} vertices, edges {:?}", g.len(), g.edges()),
        Signature::StDigraph => format!("{} vertices, S {:?}, T {:?}", g.len(), g.s_pairs(), g.t_pairs()),
        Signature::Ternary => format!("{} vertices, R {:?}", g.len(), g.r_triples()),
    }
}

fn demo(cli: &Cli, class: &ClassId, member: Option<&Path>) -> Res<u8> {
    let h = match member {
        Some(p) => read_structure(p)?,
        None => default_member(class)?,
    };
    if !is_member(class, &h)? {
        return Err(Error::NotMember { class: class.to_string() }.into());
    }
    let span = cap_counterexample(class, &h)?;
    let mut cfg = OracleConfig::default();
    if let Some(s) = cli.cap_sum {
        cfg.cap_sum = s;
        cfg.cap_sum_ternary = s;
    }
    let cert = amalgam_exists(&span, class, &cfg)?;
    if cli.json {
        out!("{}", serde_json::to_string_pretty(&json!({ "span": span, "certificate": cert }))?);
        return Ok(0);
    }
    out!("class {class}");
    out!("H = Z: {}", describe(&span.z));
    out!("X:     {}", describe(&span.x));
    out!("Y:     {}", describe(&span.y));
    out!("f: Z -> X {:?}", span.f.map());
    out!("g: Z -> Y {:?}", span.g.map());
    out!(
        "amalgam over Z: {} ({} candidates, {} ms)",
        if cert.passed() { "found" } else { "none" },
        cert.stats.candidates,
        cert.stats.millis
    );
    for n in &cert.notes {
        out!("  {n}");
    }
    out!("{}", cert.to_json());
    Ok(0)
}

fn limit(cli: &Cli, kind: &LimitKind) -> Res<u8> {
    match kind {
        LimitKind::Tree {
            depth,
            branching,
            out,
            json_out,
        } => {
            let t = subdivided_tree(*depth, *branching)?;
            write_or_print(out.as_deref(), to_dot(&t, "tree")?.trim_end())?;
            if let Some(p) = json_out {
                write_or_print(Some(p), &to_json(&t))?;
            }
            if out.is_some() {
                out!("{} vertices, {} edges", t.len(), t.edge_count());
            }
            Ok(0)
        }
        LimitKind::Chain {
            class,
            steps,
            cap,
            horizon,
            out,
            log,
            at,
            snapshot_dir,
        } => {
            let cfg = ChainConfig {
                reserve_horizon: *horizon,
                ..ChainConfig::new(*steps, *cap, cli.seed)
            };
            let st = generic_chain_with(class, cfg)?;
            write_or_print(out.as_deref(), &to_json(&st.current))?;
            if let Some(p) = log {
                write_or_print(Some(p), &serde_json::to_string_pretty(&st.log)?)?;
            }
            if let Some(dir) = snapshot_dir {
                fs::create_dir_all(dir)?;
                for &t in at {
                    let g = st.snapshot(t)?;
                    fs::write(dir.join(format!("step-{t}.json")), to_json(&g))?;
                }
            }
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for a in st.log.iter().flat_map(|e| &e.actions) {
                let key = match a {
                    Action::Realized { .. } => "realized",
                    Action::AlreadyRealized { .. } => "already_realized",
                    Action::SkippedCap { .. } => "skipped_cap",
                    Action::Unrealizable { .. } => "unrealizable",
                    Action::Determined { .. } => "determined",
                    Action::Idle => "idle",
                };
                *counts.entry(key).or_default() += 1;
            }
            let early = match class {
                ClassId::K5 | ClassId::P if *horizon <= *steps => Some(st.undetermined_from_step(*horizon)?),
                _ => None,
            };
            let summary = json!({
                "class": class,
                "steps": steps,
                "size": st.current.len(),
                "actions": counts,
                "horizon": horizon,
                "undetermined_early": early,
            });
            // keep stdout pure JSON when the structure went there
            if out.is_none() {
                eprintln!("{summary}");
            } else if cli.json {
                out!("{summary}");
            } else {
                out!("{} after {steps} steps: {} vertices", class, st.current.len());
                for (k, v) in &counts {
                    out!("  {k}: {v}");
                }
                if let Some(e) = early {
                    out!("  undetermined vertices present after step {horizon}: {e:?}");
                }
            }
            Ok(0)
        }
    }
}
