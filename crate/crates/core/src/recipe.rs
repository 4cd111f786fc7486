//! Group-spec strings.
//!
//! ```text
//! spec    := factor ('x' factor)*          products associate left
//! factor  := 'C' n | 'D' n | 'Dic' n | 'Q' n | 'S' n | 'A' n
//!          | 'SL(2,' p ')'
//!          | 'perm:[' gen (';' gen)* ']'   gen := ('(' i (',' i)* ')')*
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;

pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    SpecialLinear(usize),
    Product(Box<Recipe>, Box<Recipe>),
    /// Generators as lists of cycles.
    Permutation(Vec<Vec<Vec<usize>>>),
}

impl Recipe {
    /// The order of the group this recipe builds, when it is known without
    /// generating a permutation group.
    pub fn order(&self) -> Option<usize> {
        match *self {
            Recipe::Cyclic(n) | Recipe::Dihedral(n) | Recipe::Dicyclic(n) | Recipe::Quaternion(n) => Some(n),
            Recipe::Symmetric(n) => Some((1..=n).product()),
            Recipe::Alternating(n) => Some(((1..=n).product::<usize>() / 2).max(1)),
            Recipe::SpecialLinear(p) => Some(p * (p * p - 1)),
            Recipe::Product(ref a, ref b) => Some(a.order()?.checked_mul(b.order()?)?),
            Recipe::Permutation(_) => None,
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        if let Some(order) = self.order() {
            if order > cap {
                return Err(Error::CapExceeded { order, cap });
            }
        }
        let group = match self {
            Recipe::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("C0: order must be positive".into()));
                }
                Group::cyclic(*n)
            }
            Recipe::Dihedral(n) => Group::dihedral(*n)?,
            Recipe::Dicyclic(n) => Group::dicyclic(*n)?,
            Recipe::Quaternion(n) => Group::quaternion(*n)?,
            Recipe::Symmetric(n) => Group::symmetric(*n)?,
            Recipe::Alternating(n) => Group::alternating(*n)?,
            Recipe::SpecialLinear(p) => Group::special_linear(*p)?,
            Recipe::Product(a, b) => {
                let (a, b) = (a.build(cap)?, b.build(cap)?);
                if a.order() * b.order() > cap {
                    return Err(Error::CapExceeded {
                        order: a.order() * b.order(),
                        cap,
                    });
                }
                Group::direct_product(&a, &b)
            }
            Recipe::Permutation(gens) => {
                let degree = gens.iter().flatten().flatten().map(|&x| x + 1).max().unwrap_or(1);
                let images: Vec<Vec<usize>> = gens
                    .iter()
                    .map(|cycles| cycles_to_images(cycles, degree))
                    .collect::<Result<_>>()?;
                Group::from_permutations(self.to_string(), degree, &images, cap)?
            }
        };
        Ok(group.with_label(self.to_string()))
    }
}

fn cycles_to_images(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..degree).collect();
    // cycles are composed right to left, as in (1,2)(2,3)
    for cycle in cycles.iter().rev() {
        let mut step: Vec<usize> = (0..degree).collect();
        for (i, &x) in cycle.iter().enumerate() {
            step[x] = cycle[(i + 1) % cycle.len()];
        }
        let mut seen = vec![false; degree];
        for &x in cycle {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter(format!("point {x} repeated in a cycle")));
            }
        }
        images = images.iter().map(|&y| step[y]).collect();
    }
    Ok(images)
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Cyclic(n) => write!(f, "C{n}"),
            Recipe::Dihedral(n) => write!(f, "D{n}"),
            Recipe::Dicyclic(n) => write!(f, "Dic{n}"),
            Recipe::Quaternion(n) => write!(f, "Q{n}"),
            Recipe::Symmetric(n) => write!(f, "S{n}"),
            Recipe::Alternating(n) => write!(f, "A{n}"),
            Recipe::SpecialLinear(p) => write!(f, "SL(2,{p})"),
            Recipe::Product(a, b) => write!(f, "{a}x{b}"),
            Recipe::Permutation(gens) => {
                write!(f, "perm:[")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    if cycles.is_empty() {
                        write!(f, "()")?;
                    }
                    for cycle in cycles {
                        let points: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", points.join(","))?;
                    }
                }
                write!(f, "]")
            }
        }
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        parse_group_spec(s)
    }
}

/// Parses a group-spec string into a construction recipe.
pub fn parse_group_spec(text: &str) -> Result<Recipe> {
    let tokens: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    if parser.tokens.is_empty() {
        return Err(parser.error("empty group spec"));
    }
    let mut recipe = parser.factor()?;
    while parser.eat('x') {
        let rhs = parser.factor()?;
        recipe = Recipe::Product(Box::new(recipe), Box::new(rhs));
    }
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(recipe)
}

/// Parses and builds in one step.
pub fn construct_group(spec: &str, cap: usize) -> Result<Group> {
    parse_group_spec(spec)?.build(cap)
}

struct Parser {
    tokens: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        let matches =
            self.tokens.len() >= self.pos + n && self.tokens[self.pos..self.pos + n].iter().map(|t| t.1).eq(s.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or_else(|| self.error("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<Recipe> {
        if self.eat_str("perm:[") {
            return self.permutation();
        }
        if self.eat_str("SL(2,") {
            let p = self.number()?;
            self.expect(')')?;
            return Ok(Recipe::SpecialLinear(p));
        }
        if self.eat_str("Dic") {
            return Ok(Recipe::Dicyclic(self.number()?));
        }
        let ctor: fn(usize) -> Recipe = match self.peek() {
            Some('C') => Recipe::Cyclic,
            Some('D') => Recipe::Dihedral,
            Some('Q') => Recipe::Quaternion,
            Some('S') => Recipe::Symmetric,
            Some('A') => Recipe::Alternating,
            _ => return Err(self.error("expected a group name (C, D, Dic, Q, S, A, SL, perm)")),
        };
        self.pos += 1;
        Ok(ctor(self.number()?))
    }

    fn permutation(&mut self) -> Result<Recipe> {
        let mut gens = Vec::new();
        if self.eat(']') {
            return Ok(Recipe::Permutation(gens));
        }
        loop {
            let mut cycles = Vec::new();
            while self.eat('(') {
                let mut cycle = Vec::new();
                if !self.eat(')') {
                    loop {
                        cycle.push(self.number()?);
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
            }
            gens.push(cycles);
            if self.eat(']') {
                return Ok(Recipe::Permutation(gens));
            }
            self.expect(';')?;
        }
    }
}
