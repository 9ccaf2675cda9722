//! Reader for CCalc-style action description files.
//!
//! Operator precedence, loosest first: `<->>`, `->>` (right associative),
//! `++`, `&`, then prefix `-`. Comparisons bind tighter than all of them.

mod lexer;
mod overrides;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::syntax::*;
use lexer::{tokenize, Tok, Token};

pub use overrides::{parse_query_override, OverrideError, QueryOverride, SolutionCount, StepBound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{file}:{line}:{col}: expected {expected}, found {found}")]
    Syntax {
        file: String,
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("{file}:{line}:{col}: {msg}")]
    Invalid {
        file: String,
        line: u32,
        col: u32,
        msg: String,
    },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

type Result<T> = std::result::Result<T, ParseError>;

const KEYWORDS: &[&str] = &[
    "caused",
    "if",
    "after",
    "where",
    "causes",
    "constraint",
    "default",
    "inertial",
    "exogenous",
    "nonexecutable",
    "always",
    "rigid",
    "mod",
];

/// Parses a description given as text. `:- include` directives resolve
/// against the current directory.
pub fn parse_str(text: &str) -> Result<ActionDescription> {
    parse_description(vec![SourceFile {
        path: PathBuf::from("<input>"),
        text: text.to_string(),
        includes: vec![],
    }])
}

/// Reads and parses the given files, in order, into one description.
pub fn parse_files<P: AsRef<Path>>(paths: &[P]) -> Result<ActionDescription> {
    let mut files = Vec::new();
    for p in paths {
        let path = resolve_existing(p.as_ref()).unwrap_or_else(|| p.as_ref().to_path_buf());
        files.push(read_source(&path)?);
    }
    parse_description(files)
}

/// Parses already loaded source files, in order, into one description.
pub fn parse_description(files: Vec<SourceFile>) -> Result<ActionDescription> {
    let mut loader = Loader {
        desc: ActionDescription::default(),
        loaded: HashMap::new(),
    };
    for file in files {
        let key = fs::canonicalize(&file.path).unwrap_or_else(|_| file.path.clone());
        if loader.loaded.contains_key(&key) {
            continue;
        }
        let idx = loader.add(key, file);
        loader.parse(idx)?;
    }
    let desc = loader.desc;
    if desc.has_sort_cycle() {
        return Err(ParseError::Invalid {
            file: "<description>".into(),
            line: 0,
            col: 0,
            msg: "sort hierarchy contains a cycle".into(),
        });
    }
    Ok(desc)
}

/// Parses one law in the context of an existing description's declarations.
pub fn parse_law(text: &str, context: &ActionDescription) -> Result<Law> {
    let mut loader = Loader {
        desc: context.clone(),
        loaded: HashMap::new(),
    };
    loader.desc.laws.clear();
    let idx = loader.add(
        PathBuf::from("<law>"),
        SourceFile {
            path: PathBuf::from("<law>"),
            text: text.to_string(),
            includes: vec![],
        },
    );
    loader.parse(idx)?;
    let mut laws = std::mem::take(&mut loader.desc.laws);
    match laws.len() {
        1 => Ok(laws.pop().unwrap()),
        n => Err(ParseError::Invalid {
            file: "<law>".into(),
            line: 1,
            col: 1,
            msg: format!("expected one law, found {n}"),
        }),
    }
}

fn read_source(path: &Path) -> Result<SourceFile> {
    let text = fs::read_to_string(path).map_err(|e| ParseError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok(SourceFile {
        path: path.to_path_buf(),
        text,
        includes: vec![],
    })
}

fn resolve_existing(path: &Path) -> Option<PathBuf> {
    if path.is_file() {
        return Some(path.to_path_buf());
    }
    let with_ext = path.with_extension("cp");
    with_ext.is_file().then_some(with_ext)
}

struct Loader {
    desc: ActionDescription,
    loaded: HashMap<PathBuf, usize>,
}

impl Loader {
    fn add(&mut self, key: PathBuf, file: SourceFile) -> usize {
        let idx = self.desc.sources.len();
        self.desc.sources.push(file);
        self.loaded.insert(key, idx);
        idx
    }

    fn parse(&mut self, idx: usize) -> Result<()> {
        let src = &self.desc.sources[idx];
        let label = src.path.display().to_string();
        let toks = tokenize(&src.text).map_err(|e| ParseError::Invalid {
            file: label.clone(),
            line: e.line,
            col: e.col,
            msg: e.msg,
        })?;
        let mut p = Parser {
            ld: self,
            toks,
            pos: 0,
            file: idx,
            label,
        };
        p.run()
    }
}

struct Parser<'a> {
    ld: &'a mut Loader,
    toks: Vec<Token>,
    pos: usize,
    file: usize,
    label: String,
}

impl Parser<'_> {
    fn desc(&self) -> &ActionDescription {
        &self.ld.desc
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(ParseError::Syntax {
            file: self.label.clone(),
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.to_string(),
        })
    }

    fn invalid<T>(&self, tok: &Token, msg: impl Into<String>) -> Result<T> {
        Err(ParseError::Invalid {
            file: self.label.clone(),
            line: tok.line,
            col: tok.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            self.err(&tok.to_string())
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err("identifier"),
        }
    }

    fn run(&mut self) -> Result<()> {
        while *self.peek() != Tok::Eof {
            if self.eat(&Tok::ColonDash) {
                self.directive()?;
            } else {
                let law = self.law()?;
                self.ld.desc.laws.push(law);
            }
        }
        Ok(())
    }

    // ---- directives -------------------------------------------------------

    fn directive(&mut self) -> Result<()> {
        let tok = self.toks[self.pos].clone();
        let name = self.ident()?;
        match name.as_str() {
            "sorts" => self.items(Self::sort_item),
            "objects" => self.items(Self::object_item),
            "constants" => self.items(Self::constant_item),
            "variables" => self.items(Self::variable_item),
            "query" => self.query(),
            "include" => self.include(),
            "macros" => self.invalid(&tok, "macro definitions are not supported"),
            other => self.invalid(&tok, format!("unknown directive `{other}`")),
        }
    }

    fn items(&mut self, item: fn(&mut Self) -> Result<()>) -> Result<()> {
        loop {
            item(self)?;
            if self.eat(&Tok::Semi) {
                if self.eat(&Tok::Dot) {
                    return Ok(());
                }
                continue;
            }
            self.expect(Tok::Dot)?;
            return Ok(());
        }
    }

    fn sort_item(&mut self) -> Result<()> {
        let mut chain = vec![self.ident()?];
        while self.eat(&Tok::GtGt) {
            chain.push(self.ident()?);
        }
        let desc = &mut self.ld.desc;
        if chain.len() == 1 {
            let name = &chain[0];
            if desc.has_sort(name) {
                return Err(ParseError::DuplicateDeclaration(name.clone()));
            }
        }
        for (i, name) in chain.iter().enumerate() {
            if name == BOOLEAN {
                return Err(ParseError::DuplicateDeclaration(name.clone()));
            }
            if desc.sort(name).is_none() {
                desc.sorts.push(SortDecl {
                    name: name.clone(),
                    supersorts: vec![],
                    objects: vec![],
                });
            }
            if i > 0 {
                let sup = chain[i - 1].clone();
                let s = desc.sorts.iter_mut().find(|s| &s.name == name).unwrap();
                if !s.supersorts.contains(&sup) {
                    s.supersorts.push(sup);
                }
            }
        }
        Ok(())
    }

    fn object_item(&mut self) -> Result<()> {
        let mut objects = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(s) => {
                    self.bump();
                    objects.push(s);
                }
                Tok::Int(a) => {
                    self.bump();
                    if self.eat(&Tok::DotDot) {
                        let b = match self.peek().clone() {
                            Tok::Int(b) => b,
                            _ => return self.err("integer"),
                        };
                        self.bump();
                        objects.extend((a..=b).map(|n| n.to_string()));
                    } else {
                        objects.push(a.to_string());
                    }
                }
                _ => return self.err("object name"),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::DoubleColon)?;
        let sort = self.ident()?;
        let desc = &mut self.ld.desc;
        if sort == BOOLEAN || desc.sort(&sort).is_none() {
            return Err(ParseError::UnknownSort(sort));
        }
        for o in &objects {
            if desc.constant(o).is_some() {
                return Err(ParseError::DuplicateDeclaration(o.clone()));
            }
        }
        let s = desc.sorts.iter_mut().find(|s| s.name == sort).unwrap();
        for o in objects {
            if !s.objects.contains(&o) {
                s.objects.push(o);
            }
        }
        Ok(())
    }

    fn constant_item(&mut self) -> Result<()> {
        let mut heads = Vec::new();
        loop {
            let name = self.ident()?;
            let mut args = Vec::new();
            if self.eat(&Tok::LParen) {
                loop {
                    args.push(self.ident()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
            }
            heads.push((name, args));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::DoubleColon)?;
        let kind_tok = self.toks[self.pos].clone();
        let kind_name = self.ident()?;
        let kind = match DeclKind::from_keyword(&kind_name) {
            Some(k) => k,
            None if matches!(
                kind_name.as_str(),
                "attribute" | "additiveFluent" | "additiveAction" | "rigid"
            ) =>
            {
                return self.invalid(
                    &kind_tok,
                    format!("constant kind `{kind_name}` is not supported"),
                );
            }
            None => return self.invalid(&kind_tok, format!("unknown constant kind `{kind_name}`")),
        };
        let mut value_sort = BOOLEAN.to_string();
        if self.eat(&Tok::LParen) {
            value_sort = self.ident()?;
            self.expect(Tok::RParen)?;
        }
        let desc = &mut self.ld.desc;
        if !desc.has_sort(&value_sort) {
            return Err(ParseError::UnknownSort(value_sort));
        }
        for (name, args) in heads {
            if let Some(s) = args.iter().find(|s| !desc.has_sort(s)) {
                return Err(ParseError::UnknownSort(s.clone()));
            }
            if desc.constant(&name).is_some() || desc.object_names().contains(name.as_str()) {
                return Err(ParseError::DuplicateDeclaration(name));
            }
            desc.constants.push(ConstantDecl {
                name,
                arg_sorts: args,
                kind,
                value_sort: value_sort.clone(),
            });
        }
        Ok(())
    }

    fn variable_item(&mut self) -> Result<()> {
        let mut names = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Var(v) => {
                    self.bump();
                    names.push(v);
                }
                _ => return self.err("variable name"),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::DoubleColon)?;
        let sort = self.ident()?;
        let desc = &mut self.ld.desc;
        if !desc.has_sort(&sort) {
            return Err(ParseError::UnknownSort(sort));
        }
        for name in names {
            if desc.variable_sort(&name).is_some() {
                return Err(ParseError::DuplicateDeclaration(name));
            }
            desc.variables.push(VariableDecl {
                name,
                sort: sort.clone(),
            });
        }
        Ok(())
    }

    fn include(&mut self) -> Result<()> {
        loop {
            let tok = self.toks[self.pos].clone();
            let name = match self.peek().clone() {
                Tok::Str(s) => s,
                Tok::Ident(s) => s,
                _ => return self.err("file name"),
            };
            self.bump();
            let base = self.ld.desc.sources[self.file]
                .path
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_default();
            let target = base.join(&name);
            let Some(path) = resolve_existing(&target) else {
                return self.invalid(&tok, format!("cannot find included file `{name}`"));
            };
            let key = fs::canonicalize(&path).unwrap_or_else(|_| path.clone());
            let idx = match self.ld.loaded.get(&key) {
                Some(&idx) => idx,
                None => {
                    let src = read_source(&path)?;
                    let idx = self.ld.add(key, src);
                    self.ld.parse(idx)?;
                    idx
                }
            };
            self.ld.desc.sources[self.file].includes.push(idx);
            if !(self.eat(&Tok::Comma) || self.eat(&Tok::Semi)) {
                break;
            }
        }
        self.expect(Tok::Dot)?;
        Ok(())
    }

    fn query(&mut self) -> Result<()> {
        let start = self.toks[self.pos].clone();
        let mut label = None;
        let mut maxstep = None;
        let mut constraints = Vec::new();
        loop {
            if self.is_kw("label") && *self.peek_at(1) == Tok::DoubleColon {
                self.bump();
                self.bump();
                label = Some(match self.bump().tok {
                    Tok::Ident(s) => s,
                    Tok::Int(n) => n.to_string(),
                    _ => {
                        self.pos -= 1;
                        return self.err("query label");
                    }
                });
            } else if self.is_kw("maxstep") && *self.peek_at(1) == Tok::DoubleColon {
                self.bump();
                self.bump();
                let a = self.int()?;
                maxstep = Some(if self.eat(&Tok::DotDot) {
                    if self.eat_kw("infinity") {
                        MaxStep::Unbounded { min: a }
                    } else {
                        let b = self.int()?;
                        if b < a {
                            return self.invalid(&start, format!("empty step range {a}..{b}"));
                        }
                        MaxStep::Range(a, b)
                    }
                } else {
                    MaxStep::Fixed(a)
                });
            } else {
                let time = self.time_expr()?;
                self.expect(Tok::Colon)?;
                let at = self.toks[self.pos].clone();
                let mut f = self.formula()?;
                while self.eat(&Tok::Comma) {
                    f = Formula::and(f, self.formula()?);
                }
                if !f.variables().is_empty() {
                    return self.invalid(&at, "query formulas cannot contain variables");
                }
                constraints.push((time, f));
            }
            if self.eat(&Tok::Semi) {
                if self.eat(&Tok::Dot) {
                    break;
                }
                continue;
            }
            self.expect(Tok::Dot)?;
            break;
        }
        let label = label.unwrap_or_else(|| self.desc().queries.len().to_string());
        if self.desc().query(&label).is_some() {
            return Err(ParseError::DuplicateDeclaration(label));
        }
        let maxstep = maxstep.unwrap_or(MaxStep::Unbounded { min: 0 });
        self.ld.desc.queries.push(Query {
            label,
            maxstep,
            constraints,
        });
        Ok(())
    }

    fn int(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Int(n) if n >= 0 && n <= u32::MAX as i64 => {
                self.bump();
                Ok(n as u32)
            }
            _ => self.err("nonnegative integer"),
        }
    }

    fn time_expr(&mut self) -> Result<TimeExpr> {
        if self.eat_kw("maxstep") {
            let sign = if self.eat(&Tok::Minus) {
                -1
            } else if self.eat(&Tok::Plus) {
                1
            } else {
                return Ok(TimeExpr::MaxStep(0));
            };
            return Ok(TimeExpr::MaxStep(sign * self.int()? as i32));
        }
        Ok(TimeExpr::At(self.int()?))
    }

    // ---- laws -------------------------------------------------------------

    fn opt_part(&mut self, kw: &str) -> Result<Option<Formula>> {
        if self.eat_kw(kw) {
            Ok(Some(self.formula()?))
        } else {
            Ok(None)
        }
    }

    fn const_list(&mut self) -> Result<Vec<ConstTerm>> {
        let mut out = Vec::new();
        loop {
            match self.term()? {
                Term::Const(c) => out.push(c),
                _ => return self.err("constant"),
            }
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn law(&mut self) -> Result<Law> {
        let first = self.toks[self.pos].clone();
        let kind = if self.eat_kw("caused") {
            let head = self.formula()?;
            let cond = self.opt_part("if")?;
            let after = self.opt_part("after")?;
            LawKind::Caused { head, cond, after }
        } else if self.eat_kw("constraint") {
            let body = self.formula()?;
            let after = self.opt_part("after")?;
            LawKind::Constraint { body, after }
        } else if self.eat_kw("default") {
            let head = self.formula()?;
            let cond = self.opt_part("if")?;
            let after = self.opt_part("after")?;
            LawKind::Default { head, cond, after }
        } else if self.eat_kw("inertial") {
            LawKind::Inertial(self.const_list()?)
        } else if self.eat_kw("exogenous") {
            LawKind::Exogenous(self.const_list()?)
        } else if self.eat_kw("nonexecutable") {
            let action = self.formula()?;
            let cond = self.opt_part("if")?;
            LawKind::Nonexecutable { action, cond }
        } else if self.eat_kw("always") {
            LawKind::Always(self.formula()?)
        } else if self.is_kw("rigid") {
            return self.invalid(
                &first,
                "rigid constants are not supported; declare an sdFluent instead",
            );
        } else {
            let action = self.formula()?;
            if !self.eat_kw("causes") {
                return self.err("`causes` or a law keyword");
            }
            let effect = self.formula()?;
            let cond = self.opt_part("if")?;
            LawKind::Causes {
                action,
                effect,
                cond,
            }
        };
        let where_tok = self.toks[self.pos].clone();
        let where_clause = self.opt_part("where")?;
        if let Some(w) = &where_clause {
            if !w.constant_names().is_empty() {
                return self.invalid(&where_tok, "where clauses cannot mention constants");
            }
        }
        let dot = self.expect(Tok::Dot)?;
        let span = Span {
            file: self.file,
            start: first.start,
            end: dot.end,
            line: first.line,
            col: first.col,
        };
        Ok(Law {
            kind,
            where_clause,
            span,
        })
    }

    // ---- formulas ---------------------------------------------------------

    fn formula(&mut self) -> Result<Formula> {
        let a = self.implication()?;
        if self.eat(&Tok::Equiv) {
            let b = self.implication()?;
            return Ok(Formula::and(
                Formula::implies(a.clone(), b.clone()),
                Formula::implies(b, a),
            ));
        }
        Ok(a)
    }

    fn implication(&mut self) -> Result<Formula> {
        let a = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let b = self.implication()?;
            return Ok(Formula::implies(a, b));
        }
        Ok(a)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut a = self.conjunction()?;
        while self.eat(&Tok::PlusPlus) {
            a = Formula::or(a, self.conjunction()?);
        }
        Ok(a)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut a = self.unary()?.0;
        while self.eat(&Tok::Amp) {
            a = Formula::and(a, self.unary()?.0);
        }
        Ok(a)
    }

    /// Returns the formula and whether it is a bare Boolean constant `c`,
    /// so that `-c` can become `c=false`.
    fn unary(&mut self) -> Result<(Formula, bool)> {
        if self.eat(&Tok::Minus) {
            let (f, bare) = self.unary()?;
            return Ok(match f {
                Formula::Atom { constant, .. } if bare => {
                    (Formula::atom(constant, Term::obj(FALSE)), false)
                }
                f => (Formula::not(f), false),
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<(Formula, bool)> {
        let tok = self.toks[self.pos].clone();
        match &tok.tok {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                return Ok((f, false));
            }
            Tok::At => {
                self.bump();
                let name = self.ident()?;
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
                    loop {
                        args.push(self.term()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                return Ok((Formula::External(name, args), false));
            }
            Tok::Ident(s) if (s == TRUE || s == FALSE) && !is_comparator(self.peek_at(1)) => {
                self.bump();
                return Ok((
                    if s == TRUE {
                        Formula::True
                    } else {
                        Formula::False
                    },
                    false,
                ));
            }
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => return self.err("formula"),
            _ => {}
        }
        let lhs = self.term()?;
        if let Some(op) = comparator(self.peek()) {
            self.bump();
            let rhs = self.term()?;
            return Ok((self.comparison(&tok, op, lhs, rhs)?, false));
        }
        match lhs {
            Term::Const(c) => {
                let decl = self.desc().constant(&c.name).expect("resolved constant");
                if decl.value_sort != BOOLEAN {
                    return self
                        .invalid(&tok, format!("`{}` is not Boolean; write `{}=value`", c, c));
                }
                Ok((Formula::atom(c, Term::obj(TRUE)), true))
            }
            _ => self.err("formula"),
        }
    }

    fn comparison(&self, at: &Token, op: CmpOp, lhs: Term, rhs: Term) -> Result<Formula> {
        let atom = |c: ConstTerm, v: Term| {
            let a = Formula::atom(c, v);
            if op == CmpOp::Neq {
                Formula::not(a)
            } else {
                a
            }
        };
        match (op, lhs, rhs) {
            (CmpOp::Eq | CmpOp::Neq, Term::Const(c), v)
                if !matches!(v, Term::Arith(..)) || !v.has_constant() =>
            {
                Ok(atom(c, v))
            }
            (CmpOp::Eq | CmpOp::Neq, v, Term::Const(c)) if !v.has_constant() => Ok(atom(c, v)),
            (op, l, r) if !l.has_constant() && !r.has_constant() => Ok(Formula::Compare(op, l, r)),
            _ => self.invalid(
                at,
                "comparison between constants is only supported with `=` and `\\=`",
            ),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut a = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus
                    if matches!(self.peek_at(1), Tok::Int(_) | Tok::Var(_) | Tok::LParen) =>
                {
                    ArithOp::Sub
                }
                _ => return Ok(a),
            };
            self.bump();
            a = Term::Arith(op, Box::new(a), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut a = self.simple_term()?;
        loop {
            let op = match self.peek() {
                Tok::Star => ArithOp::Mul,
                Tok::SlashSlash => ArithOp::Div,
                Tok::Ident(s) if s == "mod" => ArithOp::Mod,
                _ => return Ok(a),
            };
            self.bump();
            a = Term::Arith(op, Box::new(a), Box::new(self.simple_term()?));
        }
    }

    fn simple_term(&mut self) -> Result<Term> {
        let tok = self.toks[self.pos].clone();
        match tok.tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Int(n))
            }
            Tok::Var(v) => {
                self.bump();
                if self.desc().variable_sort(&v).is_none() {
                    return self.invalid(&tok, format!("undeclared variable `{v}`"));
                }
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        args.push(self.term()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                match self.desc().constant(&name) {
                    Some(decl) if decl.arg_sorts.len() == args.len() => {
                        Ok(Term::Const(ConstTerm { name, args }))
                    }
                    Some(decl) => self.invalid(
                        &tok,
                        format!(
                            "constant `{name}` takes {} arguments, found {}",
                            decl.arg_sorts.len(),
                            args.len()
                        ),
                    ),
                    None if args.is_empty() => Ok(Term::Obj(name)),
                    None => self.invalid(&tok, format!("undeclared constant `{name}`")),
                }
            }
            _ => self.err("term"),
        }
    }
}

fn comparator(t: &Tok) -> Option<CmpOp> {
    Some(match t {
        Tok::Eq => CmpOp::Eq,
        Tok::Neq => CmpOp::Neq,
        Tok::Lt => CmpOp::Lt,
        Tok::Le => CmpOp::Le,
        Tok::Gt => CmpOp::Gt,
        Tok::Ge => CmpOp::Ge,
        _ => return None,
    })
}

fn is_comparator(t: &Tok) -> bool {
    comparator(t).is_some()
}

#[cfg(test)]
mod tests;
