//! S-expression syntax for terms and term files (`.smc`).
//!
//! ```text
//! file  ::= form*                       ; comments run to end of line
//! form  ::= (def NAME term) | term
//! term  ::= (id OBJ) | (zero K) | (succ K) | (eraser OBJ) | (dup OBJ) | (drop K)
//!         | (comp T T T*) | (tensor T T T*) | (left OBJ) | (sym OBJ OBJ)
//!         | (assoc OBJ OBJ OBJ) | (fr K T T) | (srr K T T) | (sdr K T T)
//!         | (psrr K T T) | (raise K T) | (lower K T) | (num K M) | NAME
//! OBJ   ::= top | (N K) | (obj OBJ*)
//! ```
//!
//! `(comp a b c)` is `a ∘ b ∘ c`; `(tensor a b c)` nests to the right;
//! `(num k m)` abbreviates `s_k^m ∘ 0_k`. Names refer to earlier
//! definitions or to library terms.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::obj::{normalize_object, ObjNF, RawObj};
use super::stdlib::{numeral, stdlib};
use super::term::{MorTerm, RecKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    })
}

fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = vec![(Vec::new(), Pos { line: 1, col: 1 })];
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let mut atom = String::new();
    let mut atom_pos = Pos { line, col };

    fn flush(atom: &mut String, pos: Pos, top: &mut Vec<Sexp>) {
        if !atom.is_empty() {
            top.push(Sexp::Atom(std::mem::take(atom), pos));
        }
    }

    while let Some(c) = chars.next() {
        let here = Pos { line, col };
        match c {
            '(' => {
                flush(&mut atom, atom_pos, &mut stack.last_mut().unwrap().0);
                stack.push((Vec::new(), here));
            }
            ')' => {
                flush(&mut atom, atom_pos, &mut stack.last_mut().unwrap().0);
                if stack.len() == 1 {
                    return err(here, "unbalanced ')'");
                }
                let (items, open) = stack.pop().unwrap();
                stack.last_mut().unwrap().0.push(Sexp::List(items, open));
            }
            ';' => {
                flush(&mut atom, atom_pos, &mut stack.last_mut().unwrap().0);
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() => flush(&mut atom, atom_pos, &mut stack.last_mut().unwrap().0),
            c => {
                if atom.is_empty() {
                    atom_pos = here;
                }
                atom.push(c);
            }
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    flush(&mut atom, atom_pos, &mut stack.last_mut().unwrap().0);
    if stack.len() > 1 {
        return err(stack.last().unwrap().1, "unclosed '('");
    }
    Ok(stack.pop().unwrap().0)
}

/// Term reader with a name environment, initialised with the library.
pub struct Reader {
    n: usize,
    env: BTreeMap<String, MorTerm>,
}

impl Reader {
    pub fn new(n: usize) -> Self {
        let env = stdlib(n).iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        Reader { n, env }
    }

    pub fn define(&mut self, name: &str, t: MorTerm) {
        self.env.insert(name.to_string(), t);
    }

    pub fn lookup(&self, name: &str) -> Option<&MorTerm> {
        self.env.get(name)
    }

    /// Reads a file of forms; bare terms are named `_1`, `_2`, ….
    pub fn read_program(&mut self, src: &str) -> Result<Vec<(String, MorTerm)>, ParseError> {
        let mut out = Vec::new();
        for form in read_all(src)? {
            match &form {
                Sexp::List(items, pos) if matches!(items.first(), Some(Sexp::Atom(h, _)) if h == "def") => {
                    let [_, Sexp::Atom(name, _), body] = items.as_slice() else {
                        return err(*pos, "expected (def NAME term)");
                    };
                    let t = self.term(body)?;
                    self.define(name, t.clone());
                    out.push((name.clone(), t));
                }
                _ => {
                    let t = self.term(&form)?;
                    out.push((format!("_{}", out.len() + 1), t));
                }
            }
        }
        Ok(out)
    }

    /// Reads exactly one term.
    pub fn read_term(&self, src: &str) -> Result<MorTerm, ParseError> {
        let forms = read_all(src)?;
        match forms.as_slice() {
            [one] => self.term(one),
            [] => err(Pos { line: 1, col: 1 }, "empty input"),
            [_, second, ..] => err(second.pos(), "trailing input after term"),
        }
    }

    /// Reads exactly one object.
    pub fn read_obj(&self, src: &str) -> Result<ObjNF, ParseError> {
        let forms = read_all(src)?;
        match forms.as_slice() {
            [one] => self.obj(one),
            [] => err(Pos { line: 1, col: 1 }, "empty input"),
            [_, second, ..] => err(second.pos(), "trailing input after object"),
        }
    }

    fn nat(&self, s: &Sexp) -> Result<usize, ParseError> {
        match s {
            Sexp::Atom(a, p) => a.parse().or_else(|_| err(*p, format!("expected a natural number, found '{a}'"))),
            Sexp::List(_, p) => err(*p, "expected a natural number"),
        }
    }

    fn raw_obj(&self, s: &Sexp) -> Result<RawObj, ParseError> {
        match s {
            Sexp::Atom(a, _) if a == "top" => Ok(RawObj::Unit),
            Sexp::Atom(a, p) => err(*p, format!("unknown object '{a}'")),
            Sexp::List(items, p) => match items.as_slice() {
                [Sexp::Atom(h, _), k] if h == "N" => Ok(RawObj::Level(self.nat(k)?)),
                [Sexp::Atom(h, _), rest @ ..] if h == "obj" => rest
                    .iter()
                    .map(|x| self.raw_obj(x))
                    .try_fold(RawObj::Unit, |acc, x| Ok(RawObj::tensor(acc, x?))),
                _ => err(*p, "expected top, (N k) or (obj ...)"),
            },
        }
    }

    fn obj(&self, s: &Sexp) -> Result<ObjNF, ParseError> {
        let raw = self.raw_obj(s)?;
        normalize_object(&raw, self.n).or_else(|e| err(s.pos(), e.to_string()))
    }

    fn level(&self, s: &Sexp) -> Result<usize, ParseError> {
        let k = self.nat(s)?;
        if k >= self.n {
            return err(s.pos(), format!("level {k} out of range for n = {}", self.n));
        }
        Ok(k)
    }

    fn term(&self, s: &Sexp) -> Result<MorTerm, ParseError> {
        let (items, pos) = match s {
            Sexp::Atom(name, p) => {
                return self
                    .env
                    .get(name)
                    .cloned()
                    .map_or_else(|| err(*p, format!("unknown name '{name}'")), Ok)
            }
            Sexp::List(items, p) => (items, *p),
        };
        let Some(Sexp::Atom(head, _)) = items.first() else {
            return err(pos, "expected a term former");
        };
        let args = &items[1..];
        let arity = |k: usize| -> Result<(), ParseError> {
            if args.len() == k {
                Ok(())
            } else {
                err(pos, format!("'{head}' takes {k} argument(s), got {}", args.len()))
            }
        };
        let variadic = |fold: fn(MorTerm, MorTerm) -> MorTerm| -> Result<MorTerm, ParseError> {
            if args.len() < 2 {
                return err(pos, format!("'{head}' takes at least 2 arguments"));
            }
            let mut ts = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
            let mut acc = ts.pop().unwrap();
            while let Some(t) = ts.pop() {
                acc = fold(t, acc);
            }
            Ok(acc)
        };
        match head.as_str() {
            "id" | "eraser" | "dup" | "left" => {
                arity(1)?;
                let x = self.obj(&args[0])?;
                Ok(match head.as_str() {
                    "id" => MorTerm::Id(x),
                    "eraser" => MorTerm::Eraser(x),
                    "dup" => MorTerm::Dup(x),
                    _ => MorTerm::Left(x),
                })
            }
            "zero" | "succ" | "drop" => {
                arity(1)?;
                let k = self.level(&args[0])?;
                Ok(match head.as_str() {
                    "zero" => MorTerm::Zero(k),
                    "succ" => MorTerm::Succ(k),
                    _ => MorTerm::Drop(k),
                })
            }
            "num" => {
                arity(2)?;
                Ok(numeral(self.level(&args[0])?, self.nat(&args[1])?))
            }
            "comp" => variadic(MorTerm::comp),
            "tensor" => variadic(MorTerm::tensor),
            "sym" => {
                arity(2)?;
                Ok(MorTerm::Sym(self.obj(&args[0])?, self.obj(&args[1])?))
            }
            "assoc" => {
                arity(3)?;
                Ok(MorTerm::Assoc(self.obj(&args[0])?, self.obj(&args[1])?, self.obj(&args[2])?))
            }
            "raise" | "lower" => {
                arity(2)?;
                let k = self.level(&args[0])?;
                let f = self.term(&args[1])?;
                Ok(if head == "raise" { MorTerm::raise(k, f) } else { MorTerm::lower(k, f) })
            }
            other => match RecKind::from_keyword(other) {
                Some(kind) => {
                    arity(3)?;
                    let k = self.level(&args[0])?;
                    Ok(MorTerm::rec(kind, k, self.term(&args[1])?, self.term(&args[2])?))
                }
                None => err(pos, format!("unknown term former '{other}'")),
            },
        }
    }
}

/// Prints an object in the concrete syntax.
pub fn print_obj(x: &ObjNF) -> String {
    if x.is_unit() {
        return "top".to_string();
    }
    if let Some(k) = x.single_level() {
        return format!("(N {k})");
    }
    let mut s = String::from("(obj");
    for k in x.factor_levels().into_iter().rev() {
        s.push_str(&format!(" (N {k})"));
    }
    s.push(')');
    s
}

struct Printer<'a>(&'a MorTerm);

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            MorTerm::Id(x) => write!(f, "(id {})", print_obj(x)),
            MorTerm::Zero(k) => write!(f, "(zero {k})"),
            MorTerm::Succ(k) => write!(f, "(succ {k})"),
            MorTerm::Eraser(x) => write!(f, "(eraser {})", print_obj(x)),
            MorTerm::Dup(x) => write!(f, "(dup {})", print_obj(x)),
            MorTerm::Drop(k) => write!(f, "(drop {k})"),
            MorTerm::Comp(g, h) => write!(f, "(comp {} {})", Printer(g), Printer(h)),
            MorTerm::Tensor(a, b) => write!(f, "(tensor {} {})", Printer(a), Printer(b)),
            MorTerm::Left(x) => write!(f, "(left {})", print_obj(x)),
            MorTerm::Sym(x, y) => write!(f, "(sym {} {})", print_obj(x), print_obj(y)),
            MorTerm::Assoc(x, y, z) => write!(f, "(assoc {} {} {})", print_obj(x), print_obj(y), print_obj(z)),
            MorTerm::Rec { kind, k, base, step } => {
                write!(f, "({} {k} {} {})", kind.keyword(), Printer(base), Printer(step))
            }
            MorTerm::RaiseG(k, t) => write!(f, "(raise {k} {})", Printer(t)),
            MorTerm::LowerT(k, t) => write!(f, "(lower {k} {})", Printer(t)),
        }
    }
}

pub fn print_term(t: &MorTerm) -> String {
    Printer(t).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::stdlib;

    #[test]
    fn reads_definitions() {
        let mut r = Reader::new(4);
        let defs = r
            .read_program(
                "; addition again\n(def add (srr 0 (id (N 0)) (succ 0)))\n(def two (num 0 2))\n(comp add (tensor (num 1 1) two))",
            )
            .unwrap();
        assert_eq!(defs[0].1, stdlib::plus(4));
        assert_eq!(defs[1].1, stdlib::numeral(0, 2));
        assert_eq!(defs[2].0, "_3");
    }

    #[test]
    fn errors_carry_positions() {
        let r = Reader::new(4);
        let e = r.read_term("(comp\n  (succ 9) (zero 0))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        let e = r.read_term("(succ 0").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(r.read_term("nosuch").is_err());
    }

    #[test]
    fn objects() {
        let r = Reader::new(3);
        let x = r.read_obj("(obj (N 1) top (obj (N 0) (N 1)))").unwrap();
        assert_eq!(x.profile(), &[1, 2, 0]);
        assert_eq!(print_obj(&x), "(obj (N 1) (N 1) (N 0))");
    }

    #[test]
    fn library_round_trip() {
        let r = Reader::new(4);
        for (_, t) in stdlib::stdlib(4).iter() {
            assert_eq!(&r.read_term(&print_term(t)).unwrap(), t);
        }
    }
}
