//! Text formats: scalar/series expressions, matrices, and connection files.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! atom    := rational | 'zeta' '(' uint ')' | 'z' | 'O' '(' zpower ')' | '(' expr ')'
//! exponent:= '-'? uint | '(' '-'? uint ('/' uint)? ')'
//! matrix  := '[' row (',' row)* ']'      row := '[' expr (',' expr)* ']'
//! ```
//!
//! A connection file carries a header line `group=<gl|sl> n=<dim> ram=<m>`
//! followed by the coefficient matrix of `dlog z`.  Everything printed by
//! the library re-parses to an equal value.

use regconn_core::scalar::{Cyclotomic, Rational};
use regconn_core::series::{Exponent, Series};
use regconn_core::{Connection, GroupTag, Matrix};

pub type ParseResult<T> = Result<T, String>;

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(u64),
    Ident(String),
    Symbol(char),
    End,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> ParseResult<Token> {
        let save = self.pos;
        let tok = self.next()?;
        self.pos = save;
        Ok(tok)
    }

    fn next(&mut self) -> ParseResult<Token> {
        self.skip_ws();
        if self.pos >= self.input.len() {
            return Ok(Token::End);
        }
        let c = self.input[self.pos];
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
            return text
                .parse::<u64>()
                .map(Token::Number)
                .map_err(|_| format!("number out of range at byte {start}"));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
            return Ok(Token::Ident(text.to_string()));
        }
        self.pos += 1;
        Ok(Token::Symbol(c as char))
    }

    fn expect_symbol(&mut self, c: char) -> ParseResult<()> {
        match self.next()? {
            Token::Symbol(s) if s == c => Ok(()),
            other => Err(format!(
                "expected '{c}', found {other:?} at byte {}",
                self.pos
            )),
        }
    }
}

pub struct Parser<'a> {
    lexer: Lexer<'a>,
}

impl<'a> Parser<'a> {
    pub fn new(input: &'a str) -> Self {
        Parser {
            lexer: Lexer::new(input),
        }
    }

    fn parse_uint(&mut self) -> ParseResult<u64> {
        match self.lexer.next()? {
            Token::Number(n) => Ok(n),
            other => Err(format!("expected a number, found {other:?}")),
        }
    }

    /// `'-'? uint ('/' uint)?`, either bare or parenthesized.
    fn parse_exponent(&mut self) -> ParseResult<Exponent> {
        let parenthesized = matches!(self.lexer.peek()?, Token::Symbol('('));
        if parenthesized {
            self.lexer.next()?;
        }
        let negative = if matches!(self.lexer.peek()?, Token::Symbol('-')) {
            self.lexer.next()?;
            true
        } else {
            false
        };
        let numer = self.parse_uint()? as i64;
        let mut denom = 1i64;
        if parenthesized {
            if matches!(self.lexer.peek()?, Token::Symbol('/')) {
                self.lexer.next()?;
                denom = self.parse_uint()? as i64;
                if denom == 0 {
                    return Err("zero denominator in exponent".into());
                }
            }
            self.lexer.expect_symbol(')')?;
        }
        let n = if negative { -numer } else { numer };
        Ok(Exponent::new(n, denom))
    }

    fn parse_atom(&mut self) -> ParseResult<Series> {
        match self.lexer.next()? {
            Token::Number(n) => {
                // optional '/ d' makes a rational
                if matches!(self.lexer.peek()?, Token::Symbol('/')) {
                    self.lexer.next()?;
                    let d = self.parse_uint()?;
                    if d == 0 {
                        return Err("zero denominator".into());
                    }
                    Ok(Series::constant(Cyclotomic::from_rational(Rational::new(
                        (n as i64).into(),
                        (d as i64).into(),
                    ))))
                } else {
                    Ok(Series::constant(Cyclotomic::from_integer(n as i64)))
                }
            }
            Token::Ident(name) => match name.as_str() {
                "z" => Ok(Series::z()),
                "zeta" => {
                    self.lexer.expect_symbol('(')?;
                    let n = self.parse_uint()?;
                    if n == 0 {
                        return Err("zeta(0) is not defined".into());
                    }
                    self.lexer.expect_symbol(')')?;
                    Ok(Series::constant(Cyclotomic::root_of_unity(n, 1)))
                }
                "O" => {
                    // O(z^p): a zero series truncated at p; adding it to a
                    // polynomial truncates, which is exactly the intended
                    // reading.
                    self.lexer.expect_symbol('(')?;
                    match self.lexer.next()? {
                        Token::Ident(v) if v == "z" => {}
                        other => return Err(format!("expected z inside O(...), found {other:?}")),
                    }
                    let p = if matches!(self.lexer.peek()?, Token::Symbol('^')) {
                        self.lexer.next()?;
                        self.parse_exponent()?
                    } else {
                        Exponent::new(1, 1)
                    };
                    self.lexer.expect_symbol(')')?;
                    Ok(Series::zero().truncate(p))
                }
                other => Err(format!("unknown identifier '{other}'")),
            },
            Token::Symbol('(') => {
                let inner = self.parse_expr()?;
                self.lexer.expect_symbol(')')?;
                Ok(inner)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }

    fn parse_power(&mut self) -> ParseResult<Series> {
        let base = self.parse_atom()?;
        if !matches!(self.lexer.peek()?, Token::Symbol('^')) {
            return Ok(base);
        }
        self.lexer.next()?;
        let exp = self.parse_exponent()?;
        if base == Series::z() {
            return Ok(Series::monomial(Cyclotomic::one(), exp));
        }
        if !exp.is_integer() {
            return Err("fractional exponents only apply to z".into());
        }
        let k = exp.to_integer();
        // Monomials and nonzero constants invert exactly; other bases only
        // take nonnegative powers.
        if k >= 0 {
            let mut acc = Series::one();
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            let single_term = base.iter().count() == 1 && base.is_exact();
            if !single_term {
                return Err("negative powers only apply to monomials".into());
            }
            let (e, c) = base.iter().next().map(|(e, c)| (*e, c.clone())).unwrap();
            let c_inv = c.inv().map_err(|err| err.to_string())?;
            let mut acc = Series::one();
            let inv = Series::monomial(c_inv, -e);
            for _ in 0..-k {
                acc = acc.mul(&inv);
            }
            Ok(acc)
        }
    }

    fn parse_unary(&mut self) -> ParseResult<Series> {
        if matches!(self.lexer.peek()?, Token::Symbol('-')) {
            self.lexer.next()?;
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_power()
    }

    fn parse_term(&mut self) -> ParseResult<Series> {
        let mut acc = self.parse_unary()?;
        while matches!(self.lexer.peek()?, Token::Symbol('*')) {
            self.lexer.next()?;
            acc = acc.mul(&self.parse_unary()?);
        }
        Ok(acc)
    }

    pub fn parse_expr(&mut self) -> ParseResult<Series> {
        let mut acc = self.parse_term()?;
        loop {
            match self.lexer.peek()? {
                Token::Symbol('+') => {
                    self.lexer.next()?;
                    acc = acc.add(&self.parse_term()?);
                }
                Token::Symbol('-') => {
                    self.lexer.next()?;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    pub fn parse_matrix(&mut self) -> ParseResult<Matrix<Series>> {
        self.lexer.expect_symbol('[')?;
        let mut rows: Vec<Vec<Series>> = Vec::new();
        loop {
            self.lexer.expect_symbol('[')?;
            let mut row = Vec::new();
            loop {
                row.push(self.parse_expr()?);
                match self.lexer.next()? {
                    Token::Symbol(',') => continue,
                    Token::Symbol(']') => break,
                    other => return Err(format!("expected ',' or ']', found {other:?}")),
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err("ragged matrix rows".into());
                }
            }
            rows.push(row);
            match self.lexer.next()? {
                Token::Symbol(',') => continue,
                Token::Symbol(']') => break,
                other => return Err(format!("expected ',' or ']', found {other:?}")),
            }
        }
        Ok(Matrix::from_rows(rows))
    }

    fn expect_end(&mut self) -> ParseResult<()> {
        match self.lexer.next()? {
            Token::End => Ok(()),
            other => Err(format!("trailing input: {other:?}")),
        }
    }
}

/// Parse a full scalar/series expression.
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_series(input: &str) -> ParseResult<Series> {
    let mut p = Parser::new(input);
    let s = p.parse_expr()?;
    p.expect_end()?;
    Ok(s)
}

/// Parse a scalar expression (a series with only a constant term).
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_scalar(input: &str) -> ParseResult<Cyclotomic> {
    let s = parse_series(input)?;
    if !s.is_exact() || !s.is_constant_up_to_precision() {
        return Err("expected a constant scalar expression".into());
    }
    Ok(s.constant_coefficient().expect("exact constant"))
}

/// Parse a bracketed matrix of series expressions.
pub fn parse_matrix(input: &str) -> ParseResult<Matrix<Series>> {
    let mut p = Parser::new(input);
    let m = p.parse_matrix()?;
    p.expect_end()?;
    Ok(m)
}

/// Parse a matrix of constant scalars.
pub fn parse_scalar_matrix(input: &str) -> ParseResult<Matrix<Cyclotomic>> {
    let m = parse_matrix(input)?;
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let s = m.at(r, c);
            if !s.is_exact() || !s.is_constant_up_to_precision() {
                return Err(format!("entry ({r}, {c}) is not a constant scalar"));
            }
            entries.push(s.constant_coefficient().expect("exact constant"));
        }
    }
    Ok(Matrix::new(m.rows(), m.cols(), entries))
}

/// Parse a connection file: a `group=<gl|sl> n=<dim> ram=<m>` header line
/// followed by the coefficient matrix of `dlog z`.
pub fn parse_connection(input: &str) -> ParseResult<Connection> {
    let trimmed = input.trim_start();
    let (header, body) = trimmed
        .split_once('\n')
        .ok_or_else(|| "connection file needs a header line and a matrix".to_string())?;
    let mut tag = None;
    let mut n = None;
    let mut ram: u64 = 1;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("malformed header field '{field}'"))?;
        match key {
            "group" => {
                tag = Some(match value {
                    "gl" => GroupTag::Gl,
                    "sl" => GroupTag::Sl,
                    other => return Err(format!("unknown group '{other}'")),
                })
            }
            "n" => n = Some(value.parse::<usize>().map_err(|e| e.to_string())?),
            "ram" => ram = value.parse::<u64>().map_err(|e| e.to_string())?,
            other => return Err(format!("unknown header key '{other}'")),
        }
    }
    let tag = tag.ok_or_else(|| "header must declare group=gl|sl".to_string())?;
    let n = n.ok_or_else(|| "header must declare n=<dim>".to_string())?;
    let m = parse_matrix(body)?;
    if m.rows() != n || m.cols() != n {
        return Err(format!(
            "matrix is {}x{}, header says n={n}",
            m.rows(),
            m.cols()
        ));
    }
    for r in 0..n {
        for c in 0..n {
            let entry_ram = m.at(r, c).ramification();
            if ram % entry_ram != 0 {
                return Err(format!(
                    "entry ({r}, {c}) has ramification {entry_ram}, header says ram={ram}"
                ));
            }
        }
    }
    Connection::new(m, tag).map_err(|e| e.to_string())
}

/// Render a connection in the file format parsed by [`parse_connection`].
pub fn render_connection(conn: &Connection) -> String {
    let mut ram = 1u64;
    for r in 0..conn.dim() {
        for c in 0..conn.dim() {
            ram = num_integer::lcm(ram, conn.coeff().at(r, c).ramification());
        }
    }
    let group = match conn.tag() {
        GroupTag::Gl => "gl",
        GroupTag::Sl => "sl",
    };
    format!(
        "group={group} n={} ram={ram}\n{}\n",
        conn.dim(),
        conn.coeff()
    )
}
