// Copyright 2026 The nmrlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Lexer and recursive-descent parser for pulse-sequence files.
//!
//! ```text
//! file     := system seq*
//! system   := "system" "{" spin+ offset* coupling* "}"
//! spin     := "spin" IDENT STRING
//! offset   := "offset" IDENT NUMBER "Hz"
//! coupling := "J" IDENT IDENT NUMBER "Hz"
//! seq      := "sequence" IDENT "{" event* "}"
//! event    := "pulse" IDENT AXIS ANGLE
//!           | "zpulse" IDENT ANGLE
//!           | "couple" IDENT IDENT ANGLE
//!           | "delay" EXPR UNIT? "refocus"?
//! EXPR     := arithmetic over numbers, `J` and `J(a, b)`
//! UNIT     := "s" | "ms" | "us"
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Angles are degrees.

use super::ast::{Event, EventKind, Program, SequenceAst, Span};
use super::SeqError;
use crate::dynamics::{DynamicsError, SpinSystem};
use crate::spinops::Axis;

/// Field used for systems declared in sequence files, tesla.
pub const DEFAULT_B0: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(x) => format!("number {x}"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, SeqError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, column: col };
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, span));
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                j += 1;
            }
            if j >= chars.len() || chars[j] != '"' {
                return Err(SeqError::syntax(span, "unterminated string"));
            }
            toks.push((Tok::Str(chars[start..j].iter().collect()), span));
            col += j + 1 - i;
            i = j + 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            // Exponent only when followed by digits, so `5e` is not swallowed.
            if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                let mut k = j + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    j = k;
                }
            }
            let s: String = chars[start..j].iter().collect();
            let x: f64 = s
                .parse()
                .map_err(|_| SeqError::syntax(span, format!("malformed number `{s}`")))?;
            toks.push((Tok::Number(x), span));
            col += j - i;
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            toks.push((Tok::Ident(chars[start..j].iter().collect()), span));
            col += j - i;
            i = j;
        } else {
            return Err(SeqError::syntax(span, format!("unexpected character `{c}`")));
        }
    }
    toks.push((Tok::Eof, Span { line, column: col }));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect(&mut self, want: Tok) -> Result<Span, SeqError> {
        let (t, span) = self.bump();
        if t == want {
            Ok(span)
        } else {
            Err(SeqError::syntax(
                span,
                format!("expected {}, found {}", want.describe(), t.describe()),
            ))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Span, SeqError> {
        let (t, span) = self.bump();
        match t {
            Tok::Ident(ref s) if s == kw => Ok(span),
            other => Err(SeqError::syntax(
                span,
                format!("expected `{kw}`, found {}", other.describe()),
            )),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), SeqError> {
        match self.bump() {
            (Tok::Ident(s), span) => Ok((s, span)),
            (other, span) => Err(SeqError::syntax(
                span,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn signed_number(&mut self, what: &str) -> Result<f64, SeqError> {
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.bump() {
            (Tok::Number(x), _) => Ok(if negative { -x } else { x }),
            (other, span) => Err(SeqError::syntax(
                span,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    fn system(&mut self) -> Result<SpinSystem, SeqError> {
        self.keyword("system")?;
        self.expect(Tok::LBrace)?;
        let mut sys = SpinSystem::new(DEFAULT_B0);
        loop {
            let span = self.span();
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "spin" => {
                    self.bump();
                    let (label, _) = self.ident("spin label")?;
                    let isotope = match self.bump() {
                        (Tok::Str(s), _) => s,
                        (other, sp) => {
                            return Err(SeqError::syntax(
                                sp,
                                format!("expected isotope string, found {}", other.describe()),
                            ))
                        }
                    };
                    sys = sys
                        .with_spin(&label, &isotope)
                        .map_err(|e| SeqError::at(span, e))?;
                }
                Tok::Ident(kw) if kw == "offset" => {
                    self.bump();
                    let (label, lspan) = self.ident("spin label")?;
                    let hz = self.signed_number("offset in Hz")?;
                    self.keyword("Hz")?;
                    sys = sys
                        .with_offset_hz(&label, hz)
                        .map_err(|e| SeqError::at(lspan, e))?;
                }
                Tok::Ident(kw) if kw == "J" => {
                    self.bump();
                    let (a, aspan) = self.ident("spin label")?;
                    let (b, bspan) = self.ident("spin label")?;
                    let hz = self.signed_number("coupling in Hz")?;
                    self.keyword("Hz")?;
                    sys.index_of(&a).map_err(|e| SeqError::at(aspan, e))?;
                    sys.index_of(&b).map_err(|e| SeqError::at(bspan, e))?;
                    sys = sys.with_coupling(&a, &b, hz).map_err(|e| SeqError::at(span, e))?;
                }
                other => {
                    return Err(SeqError::syntax(
                        span,
                        format!(
                            "expected `spin`, `offset`, `J` or `}}`, found {}",
                            other.describe()
                        ),
                    ))
                }
            }
        }
        if sys.nspins() == 0 {
            return Err(SeqError::syntax(self.span(), "system declares no spins"));
        }
        Ok(sys)
    }

    fn resolve(&self, sys: &SpinSystem, label: &str, span: Span) -> Result<(), SeqError> {
        sys.index_of(label).map(|_| ()).map_err(|e| SeqError::at(span, e))
    }

    fn sequence(&mut self, sys: &SpinSystem) -> Result<SequenceAst, SeqError> {
        self.keyword("sequence")?;
        let (name, _) = self.ident("sequence name")?;
        self.expect(Tok::LBrace)?;
        let mut events = Vec::new();
        loop {
            let span = self.span();
            let kind = match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(kw) if kw == "pulse" => {
                    self.bump();
                    let (target, tspan) = self.ident("spin label")?;
                    self.resolve(sys, &target, tspan)?;
                    let (axis, aspan) = self.ident("axis")?;
                    let axis: Axis = axis
                        .parse()
                        .map_err(|_| SeqError::syntax(aspan, format!("unknown axis `{axis}`")))?;
                    let degrees = self.signed_number("angle in degrees")?;
                    EventKind::Pulse {
                        target,
                        axis,
                        degrees,
                    }
                }
                Tok::Ident(kw) if kw == "zpulse" => {
                    self.bump();
                    let (target, tspan) = self.ident("spin label")?;
                    self.resolve(sys, &target, tspan)?;
                    let degrees = self.signed_number("angle in degrees")?;
                    EventKind::ZComposite { target, degrees }
                }
                Tok::Ident(kw) if kw == "couple" => {
                    self.bump();
                    let (a, aspan) = self.ident("spin label")?;
                    self.resolve(sys, &a, aspan)?;
                    let (b, bspan) = self.ident("spin label")?;
                    self.resolve(sys, &b, bspan)?;
                    if sys.coupling_hz(&a, &b).is_none() {
                        return Err(SeqError::MissingCoupling {
                            span,
                            detail: format!("J({a},{b})"),
                        });
                    }
                    let degrees = self.signed_number("angle in degrees")?;
                    EventKind::Couple { a, b, degrees }
                }
                Tok::Ident(kw) if kw == "delay" => {
                    self.bump();
                    let mut seconds = self.expr(sys)?;
                    if let Tok::Ident(unit) = self.peek().clone() {
                        let factor = match unit.as_str() {
                            "s" => Some(1.0),
                            "ms" => Some(1e-3),
                            "us" => Some(1e-6),
                            _ => None,
                        };
                        if let Some(factor) = factor {
                            self.bump();
                            seconds *= factor;
                        }
                    }
                    if !(seconds >= 0.0) || !seconds.is_finite() {
                        return Err(SeqError::syntax(
                            span,
                            format!("delay must be a finite non-negative duration, got {seconds}"),
                        ));
                    }
                    let refocus = if self.is_keyword("refocus") {
                        self.bump();
                        true
                    } else {
                        false
                    };
                    EventKind::Delay { seconds, refocus }
                }
                other => {
                    return Err(SeqError::syntax(
                        span,
                        format!("expected an event or `}}`, found {}", other.describe()),
                    ))
                }
            };
            events.push(Event { kind, span });
        }
        Ok(SequenceAst { name, events })
    }

    fn expr(&mut self, sys: &SpinSystem) -> Result<f64, SeqError> {
        let mut acc = self.term(sys)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += self.term(sys)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= self.term(sys)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, sys: &SpinSystem) -> Result<f64, SeqError> {
        let mut acc = self.factor(sys)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc *= self.factor(sys)?;
                }
                Tok::Slash => {
                    let span = self.span();
                    self.bump();
                    let d = self.factor(sys)?;
                    if d == 0.0 {
                        return Err(SeqError::syntax(span, "division by zero"));
                    }
                    acc /= d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, sys: &SpinSystem) -> Result<f64, SeqError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Number(x) => Ok(x),
            Tok::Minus => Ok(-self.factor(sys)?),
            Tok::LParen => {
                let v = self.expr(sys)?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(ref s) if s == "J" => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let (a, aspan) = self.ident("spin label")?;
                    self.resolve(sys, &a, aspan)?;
                    self.expect(Tok::Comma)?;
                    let (b, bspan) = self.ident("spin label")?;
                    self.resolve(sys, &b, bspan)?;
                    self.expect(Tok::RParen)?;
                    sys.coupling_hz(&a, &b).ok_or(SeqError::MissingCoupling {
                        span,
                        detail: format!("J({a},{b})"),
                    })
                } else {
                    match sys.couplings() {
                        [] => Err(SeqError::MissingCoupling {
                            span,
                            detail: "`J` used but no coupling is declared".into(),
                        }),
                        [c] => Ok(c.j_hz),
                        _ => Err(SeqError::syntax(
                            span,
                            "several couplings declared; write J(a, b) to pick one",
                        )),
                    }
                }
            }
            other => Err(SeqError::syntax(
                span,
                format!("expected a number, found {}", other.describe()),
            )),
        }
    }
}

/// Parse a whole file.
pub fn parse(text: &str) -> Result<Program, SeqError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let system = p.system()?;
    let mut sequences: Vec<SequenceAst> = Vec::new();
    while *p.peek() != Tok::Eof {
        let span = p.span();
        let seq = p.sequence(&system)?;
        if sequences.iter().any(|s| s.name == seq.name) {
            return Err(SeqError::syntax(
                span,
                format!("sequence `{}` defined twice", seq.name),
            ));
        }
        sequences.push(seq);
    }
    Ok(Program { system, sequences })
}

/// Parse the `sequence` blocks of `text` against an already known system.
pub fn parse_sequences(text: &str, system: &SpinSystem) -> Result<Vec<SequenceAst>, SeqError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.sequence(system)?);
    }
    Ok(out)
}

impl SeqError {
    fn syntax(span: Span, message: impl Into<String>) -> Self {
        SeqError::Syntax {
            span,
            message: message.into(),
        }
    }

    fn at(span: Span, err: DynamicsError) -> Self {
        match err {
            DynamicsError::UnknownSpin(name) => SeqError::UnknownSpin { name, span },
            other => SeqError::System { span, source: other },
        }
    }
}
