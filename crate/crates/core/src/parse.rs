//! Term grammar in field notation.
//!
//! ```text
//! term := sum
//! sum  := prod ('+' prod)*
//! prod := atom (('*')? atom)*
//! atom := IDENT | '(' sum ')'
//! ```
//!
//! `*` binds tighter than `+`. Juxtaposed identifiers denote a meet, but only
//! when both are single letters: `xy` and `x y` mean `x*y`, while `x1x2`
//! must be written `x1*x2`. A parenthesized group may always be juxtaposed,
//! as in `x(y+z)`.

use crate::error::{Error, Result};
use crate::term::{GeneratorSet, Term};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Plus,
    Star,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '*' | '·' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Ident(ident)));
            }
            other => return Err(Error::Syntax { pos, msg: format!("unexpected character `{other}`") }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    gens: &'a GeneratorSet,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut parts = vec![self.prod()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            parts.push(self.prod()?);
        }
        Ok(Term::join(parts))
    }

    fn prod(&mut self) -> Result<Term> {
        let mut parts = Vec::new();
        // Whether the previous atom was a multi-letter identifier, or a
        // single-letter one; juxtaposition is refused across such a boundary.
        let mut prev_ident: Option<bool> = None;
        self.atom(&mut parts, &mut prev_ident)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    prev_ident = None;
                    self.atom(&mut parts, &mut prev_ident)?;
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    self.atom(&mut parts, &mut prev_ident)?;
                }
                _ => break,
            }
        }
        Ok(Term::meet(parts))
    }

    fn atom(&mut self, parts: &mut Vec<Term>, prev_ident: &mut Option<bool>) -> Result<()> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected `)`".into() });
                }
                self.pos += 1;
                parts.push(inner);
                *prev_ident = None;
                Ok(())
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let single = name.chars().count() == 1;
                if let Some(prev_single) = *prev_ident {
                    if !(prev_single && single) {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: format!("juxtaposition with `{name}` needs an explicit `*`"),
                        });
                    }
                }
                if self.gens.contains(&name) {
                    parts.push(Term::var(&name));
                    *prev_ident = Some(single);
                    return Ok(());
                }
                // `xyz` reads as x*y*z when every letter is a declared generator.
                let letters: Vec<String> = name.chars().map(String::from).collect();
                if letters.len() > 1
                    && name.chars().all(|c| c.is_ascii_alphabetic())
                    && letters.iter().all(|l| self.gens.contains(l))
                {
                    if prev_ident.is_some_and(|s| !s) {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: format!("juxtaposition with `{name}` needs an explicit `*`"),
                        });
                    }
                    parts.extend(letters.iter().map(|l| Term::var(l)));
                    *prev_ident = Some(true);
                    return Ok(());
                }
                Err(Error::UnknownGenerator(name))
            }
            Some((_, tok)) => Err(Error::Syntax { pos: at, msg: format!("unexpected {tok:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` into a term over `gens`.
pub fn parse_term(text: &str, gens: &GeneratorSet) -> Result<Term> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, gens, end: text.len() };
    let t = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(t)
}

/// Prints a term; `parse_term(&print_term(t), gens) == t` for every term over `gens`.
pub fn print_term(t: &Term) -> String {
    t.printed().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Op;

    fn xyz() -> GeneratorSet {
        GeneratorSet::parse("x,y,z").unwrap()
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn precedence() {
        let t = parse_term("x+y*z", &xyz()).unwrap();
        assert_eq!(t, Term::join([v("x"), Term::meet([v("y"), v("z")])]));
    }

    #[test]
    fn field_notation_m_and_big_m() {
        let m = parse_term("xy+xz+yz", &xyz()).unwrap();
        assert_eq!(
            m,
            Term::join([
                Term::meet([v("x"), v("y")]),
                Term::meet([v("x"), v("z")]),
                Term::meet([v("y"), v("z")]),
            ])
        );
        let big = parse_term("(x+y)(x+z)(y+z)", &xyz()).unwrap();
        assert_eq!(
            big,
            Term::meet([
                Term::join([v("x"), v("y")]),
                Term::join([v("x"), v("z")]),
                Term::join([v("y"), v("z")]),
            ])
        );
    }

    #[test]
    fn juxtaposition_forms() {
        let g = xyz();
        assert_eq!(parse_term("x y", &g).unwrap(), parse_term("x*y", &g).unwrap());
        assert_eq!(parse_term("x(y+z)", &g).unwrap().to_string(), "x*(y+z)");
        assert_eq!(parse_term("(x+y)z", &g).unwrap().to_string(), "(x+y)*z");
        assert_eq!(parse_term("x*yz", &g).unwrap(), Term::meet([v("x"), v("y"), v("z")]));

        let f4 = GeneratorSet::indexed("x", 4).unwrap();
        assert_eq!(parse_term("x1*x2 + x3", &f4).unwrap().to_string(), "x1*x2+x3");
        assert!(matches!(parse_term("x1 x2", &f4), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("x1x2", &f4), Err(Error::UnknownGenerator(_))));
        assert_eq!(parse_term("x1(x2+x3)", &f4).unwrap().to_string(), "x1*(x2+x3)");
    }

    #[test]
    fn nested_parentheses_are_kept() {
        let t = parse_term("(x+y)+z", &xyz()).unwrap();
        assert_eq!(t.op(), Some(Op::Join));
        assert_eq!(t.args().len(), 2);
        assert_eq!(print_term(&t), "(x+y)+z");
    }

    #[test]
    fn errors() {
        let g = xyz();
        assert_eq!(parse_term("x+w", &g), Err(Error::UnknownGenerator("w".into())));
        assert!(matches!(parse_term("x+", &g), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_term("(x+y", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("x)", &g), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_term("x-y", &g), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_term("", &g), Err(Error::Syntax { .. })));
    }

    #[test]
    fn print_examples() {
        let g = xyz();
        for s in ["x+y*z", "x", "(x+y)*(x+z)", "x*(y+z*(x+y))+z"] {
            assert_eq!(print_term(&parse_term(s, &g).unwrap()), s);
        }
    }
}
