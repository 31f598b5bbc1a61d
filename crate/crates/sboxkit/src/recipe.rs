//! Parser for construction recipes.
//!
//! Grammar (deliberately tiny — anything beyond named constructions plus
//! monomial/affine/piecewise composition is rejected):
//!
//! ```text
//! recipe   := func
//! func     := name "(" args? ")"
//!           | "piecewise" "(" "f=" func ";" "g=" func ";" "s=" int ")"
//! name     := "gold" | "kasami" | "inverse" | "bracken_leander" | "btt"
//!           | "monomial" | "affine" | "affine_inv" | "gold_plus_one"
//!           | "f_t1t2" | "f_alphabeta" | "f_gamma"
//! args     := arg ("," arg)*
//! arg      := key "=" value | value
//! value    := int | hex element | affine poly over {x, x^2, ...},
//!             constants in hex or decimal, omega spelled "w"
//! ```
//!
//! Inside `piecewise`, the `f` slot is materialized over GF(2^s) and accepts
//! the primitives `monomial`, `inverse`, `affine` and `affine_inv`; the `g`
//! slot accepts any full-field recipe.

use std::sync::Arc;

use crate::constructions::{self, PiecewiseSpec, SubfieldFn};
use crate::funcrep::{AffineMap, Lut};
use crate::gf2n::{Elt, Field};
use crate::{Error, Result};

/// A parsed recipe, with the piecewise structure retained when there is one
/// (the bound-verification suites need f, g and s, not just the table).
pub enum Parsed {
    Plain(Lut),
    Piecewise(PiecewiseSpec, Lut),
}

impl Parsed {
    pub fn lut(&self) -> &Lut {
        match self {
            Parsed::Plain(lut) => lut,
            Parsed::Piecewise(_, lut) => lut,
        }
    }

    pub fn into_lut(self) -> Lut {
        match self {
            Parsed::Plain(lut) => lut,
            Parsed::Piecewise(_, lut) => lut,
        }
    }

    pub fn piecewise(&self) -> Option<&PiecewiseSpec> {
        match self {
            Parsed::Plain(_) => None,
            Parsed::Piecewise(p, _) => Some(p),
        }
    }
}

/// Materializes a recipe over the given field.
pub fn parse_recipe(field: &Arc<Field>, text: &str) -> Result<Lut> {
    parse_recipe_full(field, text).map(Parsed::into_lut)
}

/// Materializes a recipe, retaining the piecewise decomposition when the
/// top-level construction has one.
pub fn parse_recipe_full(field: &Arc<Field>, text: &str) -> Result<Parsed> {
    let mut p = Parser::new(text);
    let call = p.parse_call()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err_at(p.pos, "trailing input after recipe"));
    }
    eval_top(field, &call, text)
}

struct Call {
    name: String,
    name_pos: usize,
    args: Vec<Arg>,
}

struct Arg {
    key: Option<String>,
    value: ArgValue,
    pos: usize,
}

enum ArgValue {
    /// Raw token span for element-/int-/poly-typed scalars.
    Text(String),
    /// Nested function call (piecewise slots).
    Call(Call),
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Recipe {
            pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_at(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err_at(start, "expected a name"));
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn parse_call(&mut self) -> Result<Call> {
        let (name, name_pos) = self.ident()?;
        self.expect(b'(')?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(Call {
                name,
                name_pos,
                args,
            });
        }
        let sep = if name == "piecewise" { b';' } else { b',' };
        loop {
            args.push(self.parse_arg(sep)?);
            self.skip_ws();
            match self.peek() {
                Some(c) if c == sep => {
                    self.pos += 1;
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(Call {
                        name,
                        name_pos,
                        args,
                    });
                }
                _ => {
                    return Err(self.err_at(
                        self.pos,
                        format!("expected `{}` or `)`", sep as char),
                    ))
                }
            }
        }
    }

    fn parse_arg(&mut self, sep: u8) -> Result<Arg> {
        self.skip_ws();
        let pos = self.pos;
        // Look ahead for `key=` (an identifier immediately followed by `=`).
        let key = {
            let save = self.pos;
            match self.ident() {
                Ok((word, _)) => {
                    self.skip_ws();
                    if self.peek() == Some(b'=') {
                        self.pos += 1;
                        Some(word)
                    } else {
                        self.pos = save;
                        None
                    }
                }
                Err(_) => {
                    self.pos = save;
                    None
                }
            }
        };
        self.skip_ws();
        // A nested call starts with an identifier followed by `(`.
        let save = self.pos;
        if let Ok((_, _)) = self.ident() {
            self.skip_ws();
            if self.peek() == Some(b'(') {
                self.pos = save;
                let call = self.parse_call()?;
                return Ok(Arg {
                    key,
                    value: ArgValue::Call(call),
                    pos,
                });
            }
        }
        self.pos = save;
        // Otherwise take the raw span up to the separator or closing paren.
        let start = self.pos;
        let mut depth = 0u32;
        while let Some(c) = self.peek() {
            match c {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                c if c == sep && depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text = self.src[start..self.pos].trim().to_string();
        if text.is_empty() {
            return Err(self.err_at(start, "expected an argument value"));
        }
        Ok(Arg {
            key,
            value: ArgValue::Text(text),
            pos,
        })
    }
}

fn arg_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Recipe {
        pos,
        msg: msg.into(),
    }
}

/// Parses a field element literal: `w`, `w^j`, hex with 0x prefix, or
/// decimal.
fn parse_element(field: &Field, text: &str, pos: usize) -> Result<Elt> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('w') {
        let omega = field
            .omega()
            .ok_or_else(|| arg_err(pos, format!("`w` undefined: GF(2^{}) has no cube root of unity", field.n())))?;
        if rest.is_empty() {
            return Ok(omega);
        }
        if let Some(exp) = rest.strip_prefix('^') {
            let e: u64 = exp
                .parse()
                .map_err(|_| arg_err(pos, format!("bad exponent in `{t}`")))?;
            return Ok(field.pow(omega, e));
        }
        return Err(arg_err(pos, format!("cannot parse element `{t}`")));
    }
    let v = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).map_err(|_| arg_err(pos, format!("bad hex element `{t}`")))?
    } else {
        t.parse::<u64>()
            .map_err(|_| arg_err(pos, format!("cannot parse element `{t}`")))?
    };
    field
        .check_element(v)
        .map_err(|e| arg_err(pos, e.to_string()))
}

fn parse_int(text: &str, pos: usize) -> Result<u64> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| arg_err(pos, format!("expected an integer, got `{text}`")))
}

/// Parses an affine polynomial over GF(2^s): sum of terms `c`, `x^(2^j)` or
/// `c*x^(2^j)`, e.g. `w*x^2+w` or `x+0x3`.
fn parse_affine_poly(field: &Field, s: u32, text: &str, pos: usize) -> Result<AffineMap> {
    let mut linear = vec![0 as Elt; s as usize];
    let mut constant: Elt = 0;
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(arg_err(pos, "empty term in affine polynomial"));
        }
        let (coeff_text, var_text) = match term.split_once('*') {
            Some((c, v)) => (Some(c.trim()), Some(v.trim())),
            None if term.contains('x') => (None, Some(term)),
            None => (Some(term), None),
        };
        let coeff = match coeff_text {
            Some(c) => parse_element(field, c, pos)?,
            None => 1,
        };
        match var_text {
            None => constant ^= coeff,
            Some(v) => {
                let j = if v == "x" {
                    0
                } else if let Some(e) = v.strip_prefix("x^") {
                    let e: u64 = e
                        .parse()
                        .map_err(|_| arg_err(pos, format!("bad power `{v}`")))?;
                    if !e.is_power_of_two() {
                        return Err(arg_err(
                            pos,
                            format!("affine terms need exponents 2^j, got x^{e}"),
                        ));
                    }
                    e.trailing_zeros()
                } else {
                    return Err(arg_err(pos, format!("cannot parse term `{term}`")));
                };
                if j >= s {
                    return Err(arg_err(
                        pos,
                        format!("x^{} exceeds the GF(2^{s}) Frobenius range", 1u64 << j),
                    ));
                }
                linear[j as usize] ^= coeff;
            }
        }
    }
    AffineMap::new(field, s, linear, constant).map_err(|e| arg_err(pos, e.to_string()))
}

struct ArgLookup<'a> {
    call: &'a Call,
}

impl<'a> ArgLookup<'a> {
    fn new(call: &'a Call, allowed: &[&str]) -> Result<ArgLookup<'a>> {
        for arg in &call.args {
            if let Some(key) = &arg.key {
                if !allowed.contains(&key.as_str()) {
                    return Err(arg_err(
                        arg.pos,
                        format!("unknown argument `{key}` for `{}`", call.name),
                    ));
                }
            }
        }
        Ok(ArgLookup { call })
    }

    fn text(&self, key: &str) -> Result<Option<(&'a str, usize)>> {
        for arg in &self.call.args {
            if arg.key.as_deref() == Some(key) {
                return match &arg.value {
                    ArgValue::Text(t) => Ok(Some((t.as_str(), arg.pos))),
                    ArgValue::Call(_) => Err(arg_err(
                        arg.pos,
                        format!("argument `{key}` must be a scalar"),
                    )),
                };
            }
        }
        Ok(None)
    }

    fn required(&self, key: &str) -> Result<(&'a str, usize)> {
        self.text(key)?.ok_or_else(|| {
            arg_err(
                self.call.name_pos,
                format!("`{}` requires argument `{key}`", self.call.name),
            )
        })
    }

    /// Single positional argument, used by affine/affine_inv shorthand.
    fn positional(&self) -> Option<(&'a str, usize)> {
        let mut found = None;
        for arg in &self.call.args {
            if arg.key.is_none() {
                if let ArgValue::Text(t) = &arg.value {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((t.as_str(), arg.pos));
                }
            }
        }
        found
    }
}

fn subfield_arg(field: &Field, lookup: &ArgLookup, name: &str, pos: usize) -> Result<u32> {
    if let Some((t, p)) = lookup.text("s")? {
        return Ok(parse_int(t, p)? as u32);
    }
    field.subfield_degree().ok_or_else(|| {
        arg_err(
            pos,
            format!("`{name}` needs s=... or a field with a designated subfield degree"),
        )
    })
}

fn eval_top(field: &Arc<Field>, call: &Call, src: &str) -> Result<Parsed> {
    match call.name.as_str() {
        "piecewise" => eval_piecewise(field, call, src),
        "gold" => {
            let a = ArgLookup::new(call, &["k"])?;
            let (k, p) = a.required("k")?;
            constructions::gold(field, parse_int(k, p)? as u32).map(Parsed::Plain)
        }
        "kasami" => {
            let a = ArgLookup::new(call, &["k"])?;
            let (k, p) = a.required("k")?;
            constructions::kasami(field, parse_int(k, p)? as u32).map(Parsed::Plain)
        }
        "inverse" => {
            ArgLookup::new(call, &[])?;
            constructions::inverse(field).map(Parsed::Plain)
        }
        "bracken_leander" => {
            let a = ArgLookup::new(call, &["k"])?;
            let (k, p) = a.required("k")?;
            constructions::bracken_leander(field, parse_int(k, p)? as u32).map(Parsed::Plain)
        }
        "btt" => {
            let a = ArgLookup::new(call, &["m", "i"])?;
            let (m, pm) = a.required("m")?;
            let (i, pi) = a.required("i")?;
            constructions::bracken_tan_tan(field, parse_int(m, pm)? as u32, parse_int(i, pi)? as u32)
                .map(Parsed::Plain)
        }
        "monomial" => {
            let a = ArgLookup::new(call, &["e"])?;
            let (e, p) = a.required("e")?;
            Ok(Parsed::Plain(Lut::monomial(
                field.clone(),
                parse_int(e, p)?,
            )))
        }
        "affine" => {
            let a = ArgLookup::new(call, &["a"])?;
            let (t, p) = match a.text("a")? {
                Some(v) => v,
                None => a.positional().ok_or_else(|| {
                    arg_err(call.name_pos, "`affine` takes one affine polynomial")
                })?,
            };
            let map = parse_affine_poly(field, field.n(), t, p)?;
            let f = field.clone();
            Ok(Parsed::Plain(Lut::from_fn(field.clone(), move |x| {
                map.eval(&f, x)
            })))
        }
        "affine_inv" => {
            let (a1, a2) = affine_inv_args(field, field.n(), call)?;
            let f = field.clone();
            let e = field.order() - 1;
            Ok(Parsed::Plain(Lut::from_fn(field.clone(), move |x| {
                a1.eval(&f, f.pow(a2.eval(&f, x), e))
            })))
        }
        "gold_plus_one" => {
            let a = ArgLookup::new(call, &["k", "s"])?;
            let (k, p) = a.required("k")?;
            let s = subfield_arg(field, &a, "gold_plus_one", call.name_pos)?;
            let piece = constructions::gold_plus_one(field, s, parse_int(k, p)? as u32)?;
            let lut = piece.materialize()?;
            Ok(Parsed::Piecewise(piece, lut))
        }
        "f_t1t2" => {
            let a = ArgLookup::new(call, &["t1", "t2", "s"])?;
            let (t1, p1) = a.required("t1")?;
            let (t2, p2) = a.required("t2")?;
            let s = subfield_arg(field, &a, "f_t1t2", call.name_pos)?;
            let (piece, lut) = constructions::f_t1t2_full(
                field,
                s,
                parse_element(field, t1, p1)?,
                parse_element(field, t2, p2)?,
            )?;
            Ok(Parsed::Piecewise(piece, lut))
        }
        "f_alphabeta" => {
            let a = ArgLookup::new(call, &["alpha", "beta", "s"])?;
            let (al, p1) = a.required("alpha")?;
            let (be, p2) = a.required("beta")?;
            let s = subfield_arg(field, &a, "f_alphabeta", call.name_pos)?;
            let (piece, lut) = constructions::f_alphabeta_full(
                field,
                s,
                parse_element(field, al, p1)?,
                parse_element(field, be, p2)?,
            )?;
            Ok(Parsed::Piecewise(piece, lut))
        }
        "f_gamma" => {
            let a = ArgLookup::new(call, &["gamma", "s"])?;
            let (g, p) = a.required("gamma")?;
            let s = subfield_arg(field, &a, "f_gamma", call.name_pos)?;
            let (piece, lut) =
                constructions::f_gamma_full(field, s, parse_element(field, g, p)?)?;
            Ok(Parsed::Piecewise(piece, lut))
        }
        other => Err(arg_err(call.name_pos, format!("unknown construction `{other}`"))),
    }
}

fn affine_inv_args(field: &Field, s: u32, call: &Call) -> Result<(AffineMap, AffineMap)> {
    let a = ArgLookup::new(call, &["a1", "a2"])?;
    let a1 = match a.text("a1")? {
        Some((t, p)) => parse_affine_poly(field, s, t, p)?,
        None => match a.positional() {
            Some((t, p)) => parse_affine_poly(field, s, t, p)?,
            None => {
                return Err(arg_err(
                    call.name_pos,
                    "`affine_inv` takes an affine polynomial (or a1=..., a2=...)",
                ))
            }
        },
    };
    let a2 = match a.text("a2")? {
        Some((t, p)) => parse_affine_poly(field, s, t, p)?,
        None => AffineMap::identity(field, s).map_err(|e| arg_err(call.name_pos, e.to_string()))?,
    };
    Ok((a1, a2))
}

fn eval_piecewise(field: &Arc<Field>, call: &Call, src: &str) -> Result<Parsed> {
    let mut f_call = None;
    let mut g_call = None;
    let mut s_val = None;
    for arg in &call.args {
        match (arg.key.as_deref(), &arg.value) {
            (Some("f"), ArgValue::Call(c)) => f_call = Some(c),
            (Some("g"), ArgValue::Call(c)) => g_call = Some(c),
            (Some("s"), ArgValue::Text(t)) => s_val = Some(parse_int(t, arg.pos)? as u32),
            (Some(k), _) => {
                return Err(arg_err(
                    arg.pos,
                    format!("unexpected piecewise argument `{k}`"),
                ))
            }
            (None, _) => {
                return Err(arg_err(
                    arg.pos,
                    "piecewise arguments must be f=..., g=..., s=...",
                ))
            }
        }
    }
    let f_call = f_call.ok_or_else(|| arg_err(call.name_pos, "piecewise needs f=..."))?;
    let g_call = g_call.ok_or_else(|| arg_err(call.name_pos, "piecewise needs g=..."))?;
    let s = s_val.ok_or_else(|| arg_err(call.name_pos, "piecewise needs s=..."))?;

    let g = eval_top(field, g_call, src)?.into_lut();
    let f = eval_subfield_fn(field, s, f_call)?;
    let provenance = format!(
        "piecewise(f={};g={};s={s})",
        call_source(f_call, src),
        call_source(g_call, src)
    );
    let piece = PiecewiseSpec::new(field.clone(), s, f, g, provenance)?;
    let lut = piece.materialize()?;
    Ok(Parsed::Piecewise(piece, lut))
}

/// Reconstructs the source text of a call for provenance strings.
fn call_source(call: &Call, _src: &str) -> String {
    let args: Vec<String> = call
        .args
        .iter()
        .map(|a| {
            let v = match &a.value {
                ArgValue::Text(t) => t.clone(),
                ArgValue::Call(c) => call_source(c, _src),
            };
            match &a.key {
                Some(k) => format!("{k}={v}"),
                None => v,
            }
        })
        .collect();
    format!("{}({})", call.name, args.join(","))
}

/// Materializes the f slot of a piecewise recipe over GF(2^s).
fn eval_subfield_fn(field: &Arc<Field>, s: u32, call: &Call) -> Result<SubfieldFn> {
    match call.name.as_str() {
        "monomial" => {
            let a = ArgLookup::new(call, &["e"])?;
            let (e, p) = a.required("e")?;
            let e = parse_int(e, p)?;
            SubfieldFn::from_fn(field, s, |x| field.pow(x, e))
        }
        "inverse" => {
            ArgLookup::new(call, &[])?;
            let e = (1u64 << s) - 2;
            SubfieldFn::from_fn(field, s, |x| field.pow(x, e))
        }
        "affine" => {
            let a = ArgLookup::new(call, &["a"])?;
            let (t, p) = match a.text("a")? {
                Some(v) => v,
                None => a.positional().ok_or_else(|| {
                    arg_err(call.name_pos, "`affine` takes one affine polynomial")
                })?,
            };
            let map = parse_affine_poly(field, s, t, p)?;
            SubfieldFn::from_fn(field, s, |x| map.eval(field, x))
        }
        "affine_inv" => {
            let (a1, a2) = affine_inv_args(field, s, call)?;
            let e = (1u64 << s) - 2;
            SubfieldFn::from_fn(field, s, |x| {
                a1.eval(field, field.pow(a2.eval(field, x), e))
            })
        }
        other => Err(arg_err(
            call.name_pos,
            format!(
                "piecewise f supports monomial/inverse/affine/affine_inv, got `{other}`"
            ),
        )),
    }
}
