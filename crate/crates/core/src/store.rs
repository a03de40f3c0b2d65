//! Line-oriented persistence for compiled knowledge bases.
//!
//! ```text
//! PIKB 1
//! digest <hex sha-256>
//! next_id <n>
//! stats rounds=<n> consensus_attempts=<n> subsumption_checks=<n>
//! sig predicate p/1
//! sig function f/1
//! clause 5 p(X)|r(Z,b) ; assoc Y->Z ; origin consensus(1,4)
//! end 1
//! ```
//!
//! `end` carries the clause count so a truncated file is detected. The empty
//! clause is written as `[]`.

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

use crate::clause::{AssocClause, Clause, ClauseId, ClauseSet, Origin};
use crate::closure::Stats;
use crate::compile::CompiledKB;
use crate::syntax::{parse_bindings, parse_clause, Signature, SymbolKind};
use crate::term::sym;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "PIKB";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unsupported store version {found} (expected {FORMAT_VERSION})")]
    VersionMismatch { found: String },
    #[error("malformed store at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("signature conflict at line {line}: {reason}")]
    SignatureConflict { line: usize, reason: String },
}

fn malformed(line: usize, reason: impl Into<String>) -> StoreError {
    StoreError::Malformed { line, reason: reason.into() }
}

/// Renders `kb` in the store format.
pub fn render_kb(kb: &CompiledKB) -> String {
    let mut out = String::new();
    out.push_str(&format!("{MAGIC} {FORMAT_VERSION}\n"));
    out.push_str(&format!("digest {}\n", kb.source_digest));
    out.push_str(&format!("next_id {}\n", kb.next_id));
    let s = &kb.stats;
    out.push_str(&format!(
        "stats rounds={} consensus_attempts={} subsumption_checks={}\n",
        s.rounds, s.consensus_attempts, s.subsumption_checks
    ));
    let mut signature = kb.signature.clone();
    for c in kb.pi.clauses() {
        let _ = signature.observe_clause(c);
    }
    for (kind, name, arity) in signature.iter() {
        out.push_str(&format!("sig {kind} {name}/{arity}\n"));
    }
    for m in &kb.pi {
        let assoc = if m.assoc.is_empty() { "assoc".to_string() } else { format!("assoc {}", m.assoc) };
        out.push_str(&format!("clause {} {} ; {assoc} ; origin {}\n", m.id, m.clause, m.origin));
    }
    out.push_str(&format!("end {}\n", kb.pi.len()));
    out
}

/// Writes `kb` to `path` via a temporary file in the same directory followed
/// by a rename, so readers never observe a half-written store.
pub fn save_kb(kb: &CompiledKB, path: &Path) -> Result<(), StoreError> {
    let io = |source| StoreError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(render_kb(kb).as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn load_kb(path: &Path) -> Result<CompiledKB, StoreError> {
    let text = fs::read_to_string(path)
        .map_err(|source| StoreError::Io { path: path.display().to_string(), source })?;
    parse_kb(&text)
}

fn parse_u64(line: usize, text: &str) -> Result<u64, StoreError> {
    text.parse().map_err(|_| malformed(line, format!("expected a number, found {text:?}")))
}

fn parse_stats(line: usize, rest: &str) -> Result<Stats, StoreError> {
    let mut stats = Stats::default();
    for field in rest.split_whitespace() {
        let (name, value) =
            field.split_once('=').ok_or_else(|| malformed(line, format!("bad stats field {field:?}")))?;
        let value = parse_u64(line, value)?;
        match name {
            "rounds" => stats.rounds = value,
            "consensus_attempts" => stats.consensus_attempts = value,
            "subsumption_checks" => stats.subsumption_checks = value,
            _ => return Err(malformed(line, format!("unknown stats field {name:?}"))),
        }
    }
    Ok(stats)
}

fn parse_origin(line: usize, text: &str) -> Result<Origin, StoreError> {
    if text == "input" {
        return Ok(Origin::Input);
    }
    let inner = text
        .strip_prefix("consensus(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| malformed(line, format!("bad origin {text:?}")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| malformed(line, format!("bad origin {text:?}")))?;
    let id = |s: &str| parse_u64(line, s.trim()).map(|v| ClauseId(v as u32));
    Ok(Origin::Consensus(id(a)?, id(b)?))
}

fn parse_entry(line: usize, rest: &str) -> Result<AssocClause, StoreError> {
    let mut parts = rest.splitn(3, " ; ");
    let head = parts.next().unwrap_or("");
    let assoc = parts.next().ok_or_else(|| malformed(line, "missing assoc field"))?;
    let origin = parts.next().ok_or_else(|| malformed(line, "missing origin field"))?;
    let (id, text) = head.split_once(' ').ok_or_else(|| malformed(line, "missing clause text"))?;
    let id = ClauseId(parse_u64(line, id)? as u32);
    let clause = if text.trim() == "[]" {
        Clause::empty()
    } else {
        parse_clause(text).map_err(|e| malformed(line, e.to_string()))?
    };
    let assoc = assoc
        .strip_prefix("assoc")
        .ok_or_else(|| malformed(line, "expected assoc field"))?;
    let assoc = parse_bindings(assoc).map_err(|e| malformed(line, e.to_string()))?;
    let origin = origin
        .strip_prefix("origin ")
        .ok_or_else(|| malformed(line, "expected origin field"))?;
    Ok(AssocClause { id, clause, assoc, origin: parse_origin(line, origin.trim())? })
}

fn check_against(signature: &Signature, line: usize, clause: &Clause) -> Result<(), StoreError> {
    let mut probe = signature.clone();
    probe.observe_clause(clause).map_err(|e| StoreError::SignatureConflict { line, reason: e.to_string() })?;
    if probe.len() != signature.len() {
        return Err(StoreError::SignatureConflict {
            line,
            reason: format!("clause {clause} uses an undeclared symbol"),
        });
    }
    Ok(())
}

/// Parses the store format produced by [`render_kb`].
pub fn parse_kb(text: &str) -> Result<CompiledKB, StoreError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    let version = header
        .strip_prefix(MAGIC)
        .map(str::trim)
        .ok_or_else(|| malformed(1, format!("missing {MAGIC} header")))?;
    if version != FORMAT_VERSION.to_string() {
        return Err(StoreError::VersionMismatch { found: version.to_string() });
    }

    let mut kb = CompiledKB::empty();
    let mut pi = ClauseSet::new();
    let mut ended = None;
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        if ended.is_some() {
            if line.trim().is_empty() {
                continue;
            }
            return Err(malformed(n, "content after end marker"));
        }
        let (tag, rest) = line.split_once(' ').unwrap_or((line, ""));
        match tag {
            "digest" => kb.source_digest = rest.trim().to_string(),
            "next_id" => kb.next_id = parse_u64(n, rest.trim())? as u32,
            "stats" => kb.stats = parse_stats(n, rest)?,
            "sig" => {
                let (kind, decl) = rest.split_once(' ').ok_or_else(|| malformed(n, "bad sig line"))?;
                let kind = match kind {
                    "predicate" => SymbolKind::Predicate,
                    "function" => SymbolKind::Function,
                    _ => return Err(malformed(n, format!("unknown symbol kind {kind:?}"))),
                };
                let (name, arity) = decl.rsplit_once('/').ok_or_else(|| malformed(n, "bad sig line"))?;
                let arity = parse_u64(n, arity)? as usize;
                kb.signature.declare(kind, &sym(name), arity).map_err(|(first, now)| {
                    StoreError::SignatureConflict {
                        line: n,
                        reason: format!("{kind} {name} declared with arities {first} and {now}"),
                    }
                })?;
            }
            "clause" => {
                let entry = parse_entry(n, rest)?;
                check_against(&kb.signature, n, &entry.clause)?;
                if !pi.insert(entry) {
                    return Err(malformed(n, "duplicate clause entry"));
                }
            }
            "end" => {
                let count = parse_u64(n, rest.trim())? as usize;
                if count != pi.len() {
                    return Err(malformed(n, format!("end marker says {count} clauses, found {}", pi.len())));
                }
                ended = Some(n);
            }
            "" if line.trim().is_empty() => {}
            _ => return Err(malformed(n, format!("unknown record {tag:?}"))),
        }
    }
    if ended.is_none() {
        return Err(malformed(last_line, "missing end marker (truncated file?)"));
    }
    kb.pi = pi;
    Ok(kb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::clause_set_equal;
    use crate::closure::ResourceLimits;
    use crate::compile::compile;
    use crate::syntax::parse_clauses;

    fn sample() -> CompiledKB {
        let set = ClauseSet::from_inputs(parse_clauses("q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z).").unwrap(), 1);
        compile(&set, ResourceLimits::default()).unwrap()
    }

    #[test]
    fn render_then_parse() {
        let kb = sample();
        let text = render_kb(&kb);
        assert!(text.starts_with("PIKB 1\n"));
        assert!(text.contains(" ; assoc Y->Z ; origin consensus("));
        let back = parse_kb(&text).unwrap();
        assert!(clause_set_equal(&back.pi, &kb.pi));
        assert_eq!(back.stats, kb.stats);
        assert_eq!(back.source_digest, kb.source_digest);
        assert_eq!(back.next_id, kb.next_id);
        assert_eq!(render_kb(&back), text);
    }

    #[test]
    fn truncated_file_is_malformed() {
        let text = render_kb(&sample());
        let cut: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_kb(&cut), Err(StoreError::Malformed { .. })));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = render_kb(&sample()).replacen("PIKB 1", "PIKB 7", 1);
        assert!(matches!(parse_kb(&text), Err(StoreError::VersionMismatch { .. })));
    }

    #[test]
    fn signature_conflict_is_detected() {
        let text = render_kb(&sample()).replacen("sig predicate q/1", "sig predicate q/2", 1);
        assert!(matches!(parse_kb(&text), Err(StoreError::SignatureConflict { .. })));
    }

    #[test]
    fn empty_clause_round_trips() {
        let mut kb = CompiledKB::empty();
        kb.pi.insert(AssocClause::input(ClauseId(3), Clause::empty()));
        let back = parse_kb(&render_kb(&kb)).unwrap();
        assert!(back.is_inconsistent());
    }

    #[test]
    fn save_and_load_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kb.pikb");
        let kb = sample();
        save_kb(&kb, &path).unwrap();
        let back = load_kb(&path).unwrap();
        assert!(clause_set_equal(&back.pi, &kb.pi));
        assert!(matches!(load_kb(&dir.path().join("missing.pikb")), Err(StoreError::Io { .. })));
    }
}
