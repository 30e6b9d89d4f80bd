//! Text format for games and automata.
//!
//! ```text
//! # comments run to the end of the line
//! [alphabet]
//! s e l
//!
//! [v0]
//! states: 2
//! initial: 0
//! accepting: 1
//! 0 s 1
//! 1 l 1
//!
//! [edges]
//! states: 2
//! initial: 0
//! accepting: 1
//! 0 s/e 1
//! 1 l/_ 1
//! ```
//!
//! A game has the sections `alphabet`, `v0`, `v1`, `edges`, `safe` and
//! `initial`; `_` stands for the empty word in transducer labels. A DFA file
//! has `alphabet` and `automaton`.

use std::fmt::Write as _;

use winset_core::automata::{determinize, Dfa, Nfa};
use winset_core::game::RationalSafetyGame;
use winset_core::relations::{Label, Transducer};
use winset_core::word::{Alphabet, EPSILON_TOKEN};

use crate::error::Error;

const GAME_SECTIONS: [&str; 6] = ["alphabet", "v0", "v1", "edges", "safe", "initial"];

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        self.tokens_after(0)
    }

    /// Tokens starting at or after byte offset `from`.
    fn tokens_after(&self, from: usize) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices().skip_while(|&(i, _)| i < from) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter().map(|(i, t)| (self.text[..i].chars().count() + 1, t)).collect()
    }

    fn error(&self, column: usize, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.number, column, msg: msg.into() }
    }
}

struct Section<'a> {
    name: &'a str,
    header: usize,
    lines: Vec<Line<'a>>,
}

fn split_sections(text: &str) -> Result<Vec<Section<'_>>, Error> {
    let mut sections: Vec<Section<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Syntax { line: number, column: 1, msg: "unterminated section header".into() })?
                .trim();
            if sections.iter().any(|s| s.name == name) {
                return Err(Error::Syntax { line: number, column: 1, msg: format!("duplicate section `{name}`") });
            }
            sections.push(Section { name, header: number, lines: Vec::new() });
            continue;
        }
        match sections.last_mut() {
            Some(s) => s.lines.push(Line { number, text: body }),
            None => {
                let column = raw.len() - raw.trim_start().len() + 1;
                return Err(Error::Syntax { line: number, column, msg: "content before the first section".into() });
            }
        }
    }
    Ok(sections)
}

fn parse_alphabet(s: &Section<'_>) -> Result<Alphabet, Error> {
    let tokens: Vec<&str> = s.lines.iter().flat_map(|l| l.tokens()).map(|(_, t)| t).collect();
    Alphabet::new(tokens).map_err(|e| Error::Syntax { line: s.header, column: 1, msg: e.to_string() })
}

/// `states`, `initial`, `accepting` and the transition lines of a section.
struct Header<'a> {
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    body: Vec<&'a Line<'a>>,
}

fn parse_number(line: &Line<'_>, column: usize, token: &str) -> Result<usize, Error> {
    token.parse().map_err(|_| line.error(column, format!("expected a state number, found `{token}`")))
}

fn parse_header<'a>(s: &'a Section<'a>) -> Result<Header<'a>, Error> {
    let mut states = None;
    let mut initial = None;
    let mut accepting = None;
    let mut body = Vec::new();
    for line in &s.lines {
        let trimmed = line.text.trim_start();
        let key = ["states", "initial", "accepting"].into_iter().find(|k| {
            trimmed.strip_prefix(k).is_some_and(|r| r.trim_start().starts_with(':'))
        });
        let Some(key) = key else {
            body.push(line);
            continue;
        };
        let colon = line.text.find(':').expect("key line has a colon");
        let values: Vec<(usize, usize)> = line
            .tokens_after(colon + 1)
            .into_iter()
            .map(|(col, t)| parse_number(line, col, t).map(|n| (col, n)))
            .collect::<Result<_, _>>()?;
        let slot = match key {
            "states" => &mut states,
            "initial" => &mut initial,
            _ => {
                if accepting.is_some() {
                    return Err(line.error(1, "duplicate `accepting`"));
                }
                accepting = Some(values.into_iter().map(|(_, n)| n).collect::<Vec<_>>());
                continue;
            }
        };
        if slot.is_some() {
            return Err(line.error(1, format!("duplicate `{key}`")));
        }
        match values.as_slice() {
            [(_, n)] => *slot = Some(*n),
            _ => return Err(line.error(1, format!("`{key}` takes exactly one number"))),
        }
    }
    let missing = |k: &str| Error::Syntax { line: s.header, column: 1, msg: format!("section `{}` lacks `{k}`", s.name) };
    Ok(Header {
        states: states.ok_or_else(|| missing("states"))?,
        initial: initial.ok_or_else(|| missing("initial"))?,
        accepting: accepting.ok_or_else(|| missing("accepting"))?,
        body,
    })
}

fn check_state(line: &Line<'_>, column: usize, q: usize, states: usize) -> Result<usize, Error> {
    if q >= states {
        return Err(line.error(column, format!("state {q} out of range (states: {states})")));
    }
    Ok(q)
}

fn parse_nfa(s: &Section<'_>, alphabet: &Alphabet) -> Result<Nfa, Error> {
    let h = parse_header(s)?;
    let mut trans = Vec::new();
    for line in &h.body {
        let toks = line.tokens();
        let [(c0, src), (c1, sym), (c2, dst)] = toks.as_slice() else {
            return Err(line.error(1, "expected `src symbol dst`"));
        };
        let p = check_state(line, *c0, parse_number(line, *c0, src)?, h.states)?;
        let a = alphabet.symbol(sym).ok_or_else(|| line.error(*c1, format!("unknown symbol `{sym}`")))?;
        let q = check_state(line, *c2, parse_number(line, *c2, dst)?, h.states)?;
        trans.push((p, a, q));
    }
    Nfa::new(alphabet.len(), h.states, h.initial, h.accepting, trans)
        .map_err(|e| Error::Syntax { line: s.header, column: 1, msg: e.to_string() })
}

fn parse_label(line: &Line<'_>, column: usize, tok: &str, alphabet: &Alphabet) -> Result<Label, Error> {
    if tok == EPSILON_TOKEN {
        return Ok(None);
    }
    alphabet.symbol(tok).map(Some).ok_or_else(|| line.error(column, format!("unknown symbol `{tok}`")))
}

fn parse_transducer(s: &Section<'_>, alphabet: &Alphabet) -> Result<Transducer, Error> {
    let h = parse_header(s)?;
    let mut trans = Vec::new();
    for line in &h.body {
        let toks = line.tokens();
        let [(c0, src), (c1, label), (c2, dst)] = toks.as_slice() else {
            return Err(line.error(1, "expected `src in/out dst`"));
        };
        let (input, output) =
            label.split_once('/').ok_or_else(|| line.error(*c1, format!("expected `in/out`, found `{label}`")))?;
        let a = parse_label(line, *c1, input, alphabet)?;
        let b = parse_label(line, *c1 + input.chars().count() + 1, output, alphabet)?;
        let p = check_state(line, *c0, parse_number(line, *c0, src)?, h.states)?;
        let q = check_state(line, *c2, parse_number(line, *c2, dst)?, h.states)?;
        trans.push((p, a, b, q));
    }
    Transducer::new(alphabet.len(), h.states, h.initial, h.accepting, trans)
        .map_err(|e| Error::Syntax { line: s.header, column: 1, msg: e.to_string() })
}

fn sections_by_name<'a>(
    sections: &'a [Section<'a>],
    wanted: &[&str],
) -> Result<Vec<&'a Section<'a>>, Error> {
    if let Some(s) = sections.iter().find(|s| !wanted.contains(&s.name)) {
        return Err(Error::Syntax { line: s.header, column: 1, msg: format!("unknown section `{}`", s.name) });
    }
    if let Some(first) = sections.first() {
        if first.name != "alphabet" {
            return Err(Error::Syntax { line: first.header, column: 1, msg: "`[alphabet]` must come first".into() });
        }
    }
    wanted
        .iter()
        .map(|w| {
            sections.iter().find(|s| s.name == *w).ok_or_else(|| Error::Syntax {
                line: sections.last().map_or(1, |s| s.lines.last().map_or(s.header, |l| l.number)),
                column: 1,
                msg: format!("missing section `[{w}]`"),
            })
        })
        .collect()
}

/// Parses and validates a game file.
pub fn parse_game(text: &str) -> Result<RationalSafetyGame, Error> {
    let sections = split_sections(text)?;
    let found = sections_by_name(&sections, &GAME_SECTIONS)?;
    let alphabet = parse_alphabet(found[0])?;
    let v0 = parse_nfa(found[1], &alphabet)?;
    let v1 = parse_nfa(found[2], &alphabet)?;
    let edges = parse_transducer(found[3], &alphabet)?;
    let safe = parse_nfa(found[4], &alphabet)?;
    let initial = parse_nfa(found[5], &alphabet)?;
    Ok(RationalSafetyGame::new(alphabet, v0, v1, edges, safe, initial)?)
}

/// Parses an automaton file; the automaton may be nondeterministic.
pub fn parse_automaton(text: &str) -> Result<(Alphabet, Nfa), Error> {
    let sections = split_sections(text)?;
    let found = sections_by_name(&sections, &["alphabet", "automaton"])?;
    let alphabet = parse_alphabet(found[0])?;
    let nfa = parse_nfa(found[1], &alphabet)?;
    Ok((alphabet, nfa))
}

/// Parses an automaton file and determinizes it.
pub fn parse_dfa(text: &str) -> Result<(Alphabet, Dfa), Error> {
    let (alphabet, nfa) = parse_automaton(text)?;
    Ok((alphabet, determinize(&nfa)))
}

/// Parses an automaton file and re-indexes its symbols by token into
/// `target`. Tokens of `target` the file does not mention get no transitions.
pub fn parse_dfa_for(text: &str, target: &Alphabet) -> Result<Dfa, Error> {
    let (alphabet, nfa) = parse_automaton(text)?;
    let map: Vec<usize> = alphabet
        .tokens()
        .iter()
        .map(|t| target.symbol(t).ok_or_else(|| winset_core::Error::UnknownToken(t.clone())))
        .collect::<Result<_, _>>()?;
    let moved = Nfa::new(
        target.len(),
        nfa.state_count(),
        nfa.initial(),
        nfa.accepting_states(),
        nfa.transitions().map(|(p, a, q)| (p, map[a], q)),
    )?;
    Ok(determinize(&moved))
}

fn write_alphabet(out: &mut String, alphabet: &Alphabet) {
    out.push_str("[alphabet]\n");
    out.push_str(&alphabet.tokens().join(" "));
    out.push('\n');
}

fn write_header(out: &mut String, states: usize, initial: usize, accepting: impl Iterator<Item = usize>) {
    let acc: Vec<String> = accepting.map(|q| q.to_string()).collect();
    let _ = writeln!(out, "states: {states}\ninitial: {initial}\naccepting:{}{}", if acc.is_empty() { "" } else { " " }, acc.join(" "));
}

fn write_nfa(out: &mut String, name: &str, a: &Nfa, alphabet: &Alphabet) {
    let _ = writeln!(out, "\n[{name}]");
    write_header(out, a.state_count(), a.initial(), a.accepting_states());
    for (p, sym, q) in a.transitions() {
        let _ = writeln!(out, "{p} {} {q}", alphabet.token(sym));
    }
}

fn label(alphabet: &Alphabet, l: Label) -> &str {
    l.map_or(EPSILON_TOKEN, |a| alphabet.token(a))
}

/// Writes `g` in the game file format.
pub fn serialize_game(g: &RationalSafetyGame) -> String {
    let sigma = g.alphabet();
    let mut out = String::new();
    write_alphabet(&mut out, sigma);
    write_nfa(&mut out, "v0", g.v0(), sigma);
    write_nfa(&mut out, "v1", g.v1(), sigma);
    let t = g.edges();
    out.push_str("\n[edges]\n");
    write_header(&mut out, t.state_count(), t.initial(), (0..t.state_count()).filter(|&q| t.is_accepting(q)));
    for (p, a, b, q) in t.transitions() {
        let _ = writeln!(out, "{p} {}/{} {q}", label(sigma, a), label(sigma, b));
    }
    write_nfa(&mut out, "safe", g.safe(), sigma);
    write_nfa(&mut out, "initial", g.initial(), sigma);
    out
}

/// Writes a DFA as an automaton file.
pub fn serialize_dfa(alphabet: &Alphabet, d: &Dfa) -> String {
    let mut out = String::new();
    write_alphabet(&mut out, alphabet);
    write_nfa(&mut out, "automaton", &d.to_nfa(), alphabet);
    out
}
