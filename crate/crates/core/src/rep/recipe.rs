use std::fmt;

use super::RepError;

/// Construction recipe of an `su(2)`-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    /// The standard 2-dimensional representation.
    V0,
    /// The adjoint representation on `g`.
    Adjoint,
    /// The trivial 1-dimensional representation.
    Trivial,
    Conj(Box<Recipe>),
    Dual(Box<Recipe>),
    Tensor(Box<Recipe>, Box<Recipe>),
    Sum(Box<Recipe>, Box<Recipe>),
    Wedge(usize, Box<Recipe>),
    Sym(usize, Box<Recipe>),
    /// `M ⊗ M*`.
    End(Box<Recipe>),
}

impl Recipe {
    pub fn parse(src: &str) -> Result<Self, RepError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let r = p.sum()?;
        if let Some(t) = p.tokens.get(p.pos) {
            return Err(RepError::MalformedRecipe(format!("unexpected {t:?} at token {}", p.pos)));
        }
        Ok(r)
    }

    pub fn conj(self) -> Self {
        Recipe::Conj(Box::new(self))
    }

    pub fn dual(self) -> Self {
        Recipe::Dual(Box::new(self))
    }

    pub fn tensor(self, o: Self) -> Self {
        Recipe::Tensor(Box::new(self), Box::new(o))
    }

    pub fn sum(self, o: Self) -> Self {
        Recipe::Sum(Box::new(self), Box::new(o))
    }

    pub fn wedge(self, k: usize) -> Self {
        Recipe::Wedge(k, Box::new(self))
    }

    pub fn sym(self, k: usize) -> Self {
        Recipe::Sym(k, Box::new(self))
    }

    /// Invariant complex `k`-forms: `∧^k (g ⊕ ḡ)*`.
    pub fn forms(k: usize) -> Self {
        Recipe::Adjoint.sum(Recipe::Adjoint.conj()).dual().wedge(k)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::V0 => f.write_str("V0"),
            Recipe::Adjoint => f.write_str("g"),
            Recipe::Trivial => f.write_str("C"),
            Recipe::Conj(r) => write!(f, "conj({r})"),
            Recipe::Dual(r) => write!(f, "dual({r})"),
            Recipe::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Recipe::Sum(a, b) => write!(f, "({a} ⊕ {b})"),
            Recipe::Wedge(k, r) => write!(f, "wedge{k}({r})"),
            Recipe::Sym(k, r) => write!(f, "sym{k}({r})"),
            Recipe::End(r) => write!(f, "end({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Times,
    Plus,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, RepError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            '⊗' | '*' => {
                chars.next();
                out.push(Tok::Times);
            }
            '⊕' | '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(RepError::MalformedRecipe(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), RepError> {
        match self.tokens.get(self.pos) {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            other => Err(RepError::MalformedRecipe(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Recipe, RepError> {
        let mut r = self.product()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            r = r.sum(self.product()?);
        }
        Ok(r)
    }

    fn product(&mut self) -> Result<Recipe, RepError> {
        let mut r = self.atom()?;
        while self.peek() == Some(&Tok::Times) {
            self.pos += 1;
            r = r.tensor(self.atom()?);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Recipe, RepError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Open) => {
                self.pos += 1;
                let r = self.sum()?;
                self.expect(Tok::Close)?;
                Ok(r)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "V0" | "V" => return Ok(Recipe::V0),
                    "g" | "sl2" => return Ok(Recipe::Adjoint),
                    "gbar" => return Ok(Recipe::Adjoint.conj()),
                    "C" | "1" | "trivial" => return Ok(Recipe::Trivial),
                    _ => {}
                }
                self.expect(Tok::Open)?;
                let arg = self.sum()?;
                self.expect(Tok::Close)?;
                let power = |prefix: &str| -> Option<Result<usize, RepError>> {
                    name.strip_prefix(prefix).map(|k| {
                        k.parse::<usize>().map_err(|_| RepError::MalformedRecipe(format!("bad power in {name:?}")))
                    })
                };
                if let Some(k) = power("wedge") {
                    return Ok(arg.wedge(k?));
                }
                if let Some(k) = power("sym") {
                    return Ok(arg.sym(k?));
                }
                match name.as_str() {
                    "dual" => Ok(arg.dual()),
                    "conj" => Ok(arg.conj()),
                    "end" => Ok(Recipe::End(Box::new(arg))),
                    _ => Err(RepError::MalformedRecipe(format!("unknown constructor {name:?}"))),
                }
            }
            other => Err(RepError::MalformedRecipe(format!("expected a module, found {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_recipes() {
        let r = Recipe::parse("wedge2(sym2(V0)) ⊗ sym2(V0)").unwrap();
        assert_eq!(r, Recipe::V0.sym(2).wedge(2).tensor(Recipe::V0.sym(2)));
        assert_eq!(Recipe::parse("wedge2(sym2(V0))*sym2(V0)").unwrap(), r);
        let s = Recipe::parse("g + gbar ⊗ g").unwrap();
        assert_eq!(s, Recipe::Adjoint.sum(Recipe::Adjoint.conj().tensor(Recipe::Adjoint)));
        assert_eq!(Recipe::parse("wedge4(dual(g ⊕ gbar))").unwrap(), Recipe::forms(4));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "wedge(V0)", "foo(V0)", "V0 ⊗", "(V0", "sym2 V0", "V0 ^ V0", "wedgex(V0)"] {
            assert!(matches!(Recipe::parse(bad), Err(RepError::MalformedRecipe(_))), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for src in ["wedge2(sym2(V0)) ⊗ sym2(V0)", "end(g)", "dual(g ⊕ conj(g))", "C ⊕ V0"] {
            let r = Recipe::parse(src).unwrap();
            assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r);
        }
    }
}
