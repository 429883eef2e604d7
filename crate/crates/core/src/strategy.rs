//! A small language for describing which coins are used on which step.
//!
//! ```text
//! program := item+
//! item    := step | '(' item+ ')' '^' count
//! step    := [AB]{1,4}
//! count   := positive decimal integer
//! ```
//!
//! Items are separated by whitespace. Letters inside a step are listed in
//! application order: `"AB"` applies A's coin, then B's coin, then shifts
//! once, which is the composite `S·(B_B·B_A ⊗ 1)`; `"BA"` is
//! `S·(B_A·B_B ⊗ 1)`. Repetition is only allowed on parenthesised groups,
//! so `"(A B)^50"` is the alternating game over 100 steps while `"A^2"` is
//! rejected.

use std::fmt;

use thiserror::Error;

use crate::coin::Matrix2;
use crate::error::{Error, Result};

/// Most coins that may act within a single step.
pub const MAX_COINS_PER_STEP: usize = 4;

/// Default bound on the expanded program length.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoinTag {
    A,
    B,
}

impl CoinTag {
    pub fn letter(self) -> char {
        match self {
            CoinTag::A => 'A',
            CoinTag::B => 'B',
        }
    }
}

/// The concrete coin matrices behind the two tags.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinSet {
    pub a: Matrix2,
    pub b: Matrix2,
}

impl CoinSet {
    pub fn get(&self, tag: CoinTag) -> Matrix2 {
        match tag {
            CoinTag::A => self.a,
            CoinTag::B => self.b,
        }
    }
}

/// Fully expanded strategy: for each step, the coins applied before the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepProgram {
    steps: Vec<Vec<CoinTag>>,
}

impl StepProgram {
    pub fn new(steps: Vec<Vec<CoinTag>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidConfig("a program needs at least one step".into()));
        }
        if let Some(bad) = steps.iter().find(|s| s.is_empty() || s.len() > MAX_COINS_PER_STEP) {
            return Err(Error::InvalidConfig(format!(
                "a step must use 1 to {MAX_COINS_PER_STEP} coins, got {}",
                bad.len()
            )));
        }
        Ok(StepProgram { steps })
    }

    /// `step` repeated `t` times.
    pub fn repeat(step: &[CoinTag], t: usize) -> Result<Self> {
        StepProgram::new(vec![step.to_vec(); t])
    }

    /// Single-coin steps cycling through `pattern` for `t` steps.
    pub fn cycle(pattern: &[CoinTag], t: usize) -> Result<Self> {
        StepProgram::new(pattern.iter().cycle().take(t).map(|&c| vec![c]).collect())
    }

    pub fn steps(&self) -> &[Vec<CoinTag>] {
        &self.steps
    }

    /// Number of shifts.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// How many times each player's coin is used.
    pub fn usage(&self) -> (usize, usize) {
        self.steps.iter().flatten().fold((0, 0), |(a, b), tag| match tag {
            CoinTag::A => (a + 1, b),
            CoinTag::B => (a, b + 1),
        })
    }

    pub fn realize(&self, coins: &CoinSet) -> Vec<Vec<Matrix2>> {
        self.steps
            .iter()
            .map(|step| step.iter().map(|&t| coins.get(t)).collect())
            .collect()
    }
}

/// Canonical text; runs of identical steps are folded into `(..)^n`.
impl fmt::Display for StepProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.steps.len() {
            let run = self.steps[i..].iter().take_while(|s| **s == self.steps[i]).count();
            let token: String = self.steps[i].iter().map(|t| t.letter()).collect();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run > 1 {
                write!(f, "({token})^{run}")?;
            } else {
                f.write_str(&token)?;
            }
            i += run;
        }
        Ok(())
    }
}

pub fn program_length(program: &StepProgram) -> usize {
    program.len()
}

/// Canonical printer; `parse(&render(p))` expands back to `p`.
pub fn render(program: &StepProgram) -> String {
    program.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Step(Vec<CoinTag>),
    Group { children: Vec<Node>, repeat: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyAst {
    pub items: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty strategy")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("'(' is never closed")]
    Unclosed,
    #[error("')' without matching '('")]
    UnmatchedClose,
    #[error("empty group")]
    EmptyGroup,
    #[error("a group must be followed by '^' and a repeat count")]
    MissingRepeat,
    #[error("repeat applies only to parenthesised groups")]
    RepeatOnStep,
    #[error("expected a repeat count")]
    MissingCount,
    #[error("repeat count must be at least 1")]
    ZeroCount,
    #[error("repeat count is too large")]
    CountOverflow,
    #[error("a step has at most {MAX_COINS_PER_STEP} coins, found {0}")]
    StepTooLong(usize),
}

/// A parse failure at byte offset `position` of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("strategy parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    /// The input with a caret under the failing position.
    pub fn annotate(&self, src: &str) -> String {
        let col = src[..self.position.min(src.len())].chars().count();
        format!("{src}\n{}^ {}", " ".repeat(col), self.kind)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err<T>(&self, position: usize, kind: ParseErrorKind) -> std::result::Result<T, ParseError> {
        Err(ParseError { position, kind })
    }

    /// `item+`, stopping at end of input or `)`.
    fn items(&mut self) -> std::result::Result<Vec<Node>, ParseError> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => return Ok(items),
                Some('A' | 'B') => items.push(self.step()?),
                Some('(') => items.push(self.group()?),
                Some(c) => return self.err(self.pos, ParseErrorKind::UnexpectedChar(c)),
            }
        }
    }

    fn step(&mut self) -> std::result::Result<Node, ParseError> {
        let start = self.pos;
        let mut tags = Vec::new();
        while let Some(c) = self.peek() {
            match c {
                'A' => tags.push(CoinTag::A),
                'B' => tags.push(CoinTag::B),
                _ => break,
            }
            self.bump();
        }
        if tags.len() > MAX_COINS_PER_STEP {
            return self.err(start, ParseErrorKind::StepTooLong(tags.len()));
        }
        match self.peek() {
            Some('^') => self.err(self.pos, ParseErrorKind::RepeatOnStep),
            None | Some('(' | ')') => Ok(Node::Step(tags)),
            Some(c) if c.is_whitespace() => Ok(Node::Step(tags)),
            Some(c) => self.err(self.pos, ParseErrorKind::UnexpectedChar(c)),
        }
    }

    fn group(&mut self) -> std::result::Result<Node, ParseError> {
        let open = self.pos;
        self.bump();
        let children = self.items()?;
        match self.peek() {
            Some(')') => {}
            _ => return self.err(open, ParseErrorKind::Unclosed),
        }
        if children.is_empty() {
            return self.err(open, ParseErrorKind::EmptyGroup);
        }
        self.bump();
        self.skip_ws();
        if self.peek() != Some('^') {
            return self.err(self.pos, ParseErrorKind::MissingRepeat);
        }
        self.bump();
        self.skip_ws();
        let repeat = self.count()?;
        Ok(Node::Group { children, repeat })
    }

    fn count(&mut self) -> std::result::Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return match self.peek() {
                None => self.err(start, ParseErrorKind::UnexpectedEnd),
                Some(_) => self.err(start, ParseErrorKind::MissingCount),
            };
        }
        let n: u64 = match digits.parse() {
            Ok(n) => n,
            Err(_) => return self.err(start, ParseErrorKind::CountOverflow),
        };
        if n == 0 {
            return self.err(start, ParseErrorKind::ZeroCount);
        }
        match self.peek() {
            None | Some('(' | ')') => Ok(n),
            Some(c) if c.is_whitespace() => Ok(n),
            Some(c) => self.err(self.pos, ParseErrorKind::UnexpectedChar(c)),
        }
    }
}

pub fn parse(src: &str) -> std::result::Result<StrategyAst, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let items = p.items()?;
    if let Some(')') = p.peek() {
        return p.err(p.pos, ParseErrorKind::UnmatchedClose);
    }
    if items.is_empty() {
        return p.err(0, ParseErrorKind::Empty);
    }
    Ok(StrategyAst { items })
}

fn expanded_len(nodes: &[Node]) -> Option<u64> {
    nodes.iter().try_fold(0u64, |acc, node| {
        let n = match node {
            Node::Step(_) => 1,
            Node::Group { children, repeat } => expanded_len(children)?.checked_mul(*repeat)?,
        };
        acc.checked_add(n)
    })
}

fn flatten(nodes: &[Node], out: &mut Vec<Vec<CoinTag>>) {
    for node in nodes {
        match node {
            Node::Step(tags) => out.push(tags.clone()),
            Node::Group { children, repeat } => {
                let start = out.len();
                flatten(children, out);
                let body = out[start..].to_vec();
                for _ in 1..*repeat {
                    out.extend_from_slice(&body);
                }
            }
        }
    }
}

pub fn expand_with_cap(ast: &StrategyAst, cap: u64) -> Result<StepProgram> {
    match expanded_len(&ast.items) {
        Some(n) if n <= cap => {}
        _ => return Err(Error::ProgramTooLong { cap: cap as usize }),
    }
    let mut steps = Vec::new();
    flatten(&ast.items, &mut steps);
    StepProgram::new(steps)
}

pub fn expand(ast: &StrategyAst) -> Result<StepProgram> {
    expand_with_cap(ast, DEFAULT_STEP_CAP)
}

/// `parse` followed by `expand`.
pub fn compile(src: &str) -> Result<StepProgram> {
    expand(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use CoinTag::{A, B};

    fn err_at(src: &str) -> (usize, ParseErrorKind) {
        let e = parse(src).unwrap_err();
        (e.position, e.kind)
    }

    #[test]
    fn alternating_group() {
        let ast = parse("(A B)^50").unwrap();
        assert_eq!(
            ast.items,
            vec![Node::Group { children: vec![Node::Step(vec![A]), Node::Step(vec![B])], repeat: 50 }]
        );
        assert_eq!(program_length(&expand(&ast).unwrap()), 100);
    }

    #[test]
    fn composite_group() {
        let ast = parse("(AB)^100").unwrap();
        assert_eq!(
            ast.items,
            vec![Node::Group { children: vec![Node::Step(vec![A, B])], repeat: 100 }]
        );
    }

    #[test]
    fn expansion() {
        assert_eq!(compile("(A B)^2").unwrap().steps(), &[vec![A], vec![B], vec![A], vec![B]]);
        assert_eq!(compile("(AB)^3").unwrap().steps(), &[vec![A, B], vec![A, B], vec![A, B]]);
        assert_eq!(compile("A (B A)^1 B").unwrap().steps(), &[vec![A], vec![B], vec![A], vec![B]]);
        assert_eq!(compile("((A)^2 B)^2").unwrap().len(), 6);
        assert_eq!(compile("AB").unwrap().len(), 1);
        assert_eq!(compile("(A)^7").unwrap().len(), 7);
        assert_eq!(compile("  ( A  B ) ^ 3 ").unwrap().len(), 6);
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(err_at(""), (0, ParseErrorKind::Empty));
        assert_eq!(err_at("   "), (0, ParseErrorKind::Empty));
        assert_eq!(err_at("A^2"), (1, ParseErrorKind::RepeatOnStep));
        assert_eq!(err_at("A C"), (2, ParseErrorKind::UnexpectedChar('C')));
        assert_eq!(err_at("Ax"), (1, ParseErrorKind::UnexpectedChar('x')));
        assert_eq!(err_at("(A B"), (0, ParseErrorKind::Unclosed));
        assert_eq!(err_at("A B)"), (3, ParseErrorKind::UnmatchedClose));
        assert_eq!(err_at("(A)^0"), (4, ParseErrorKind::ZeroCount));
        assert_eq!(err_at("(A)"), (3, ParseErrorKind::MissingRepeat));
        assert_eq!(err_at("(A) B"), (4, ParseErrorKind::MissingRepeat));
        assert_eq!(err_at("(A)^"), (4, ParseErrorKind::UnexpectedEnd));
        assert_eq!(err_at("(A)^x"), (4, ParseErrorKind::MissingCount));
        assert_eq!(err_at("(A)^3x"), (5, ParseErrorKind::UnexpectedChar('x')));
        assert_eq!(err_at("()^3"), (0, ParseErrorKind::EmptyGroup));
        assert_eq!(err_at("B ABABA"), (2, ParseErrorKind::StepTooLong(5)));
        assert_eq!(err_at("(A)^99999999999999999999999"), (4, ParseErrorKind::CountOverflow));
    }

    #[test]
    fn annotate_points_at_the_error() {
        let src = "(A B)^0";
        let e = parse(src).unwrap_err();
        assert_eq!(e.annotate(src), "(A B)^0\n      ^ repeat count must be at least 1");
    }

    #[test]
    fn step_cap() {
        let ast = parse("((A)^1000)^1001").unwrap();
        assert_eq!(expand(&ast), Err(Error::ProgramTooLong { cap: 1_000_000 }));
        let ast = parse("((((A)^100000)^100000)^100000)^100000").unwrap();
        assert!(expand(&ast).is_err());
        assert_eq!(expand_with_cap(&parse("(A)^10").unwrap(), 10).unwrap().len(), 10);
    }

    #[test]
    fn program_construction() {
        assert!(StepProgram::new(vec![]).is_err());
        assert!(StepProgram::new(vec![vec![]]).is_err());
        assert!(StepProgram::new(vec![vec![A; 5]]).is_err());
        assert_eq!(StepProgram::cycle(&[A, B], 3).unwrap().steps(), &[vec![A], vec![B], vec![A]]);
        assert_eq!(StepProgram::cycle(&[A, B], 5).unwrap().usage(), (3, 2));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(render(&compile("(AB)^100").unwrap()), "(AB)^100");
        assert_eq!(render(&compile("(A B)^2").unwrap()), "A B A B");
        assert_eq!(render(&compile("A A BA").unwrap()), "(A)^2 BA");
    }

    fn program() -> impl Strategy<Value = StepProgram> {
        let tag = prop_oneof![Just(A), Just(B)];
        let step = prop::collection::vec(tag, 1..=MAX_COINS_PER_STEP);
        prop::collection::vec(step, 1..40).prop_map(|s| StepProgram::new(s).unwrap())
    }

    proptest! {
        #[test]
        fn render_round_trips(p in program()) {
            prop_assert_eq!(compile(&render(&p)).unwrap(), p);
        }

        #[test]
        fn arbitrary_text_never_panics(src in "[AB()^0-9 x\t]{0,24}") {
            match parse(&src) {
                Ok(ast) => { let _ = expand(&ast); }
                Err(e) => prop_assert!(e.position <= src.len()),
            }
        }
    }
}
