//! Line-oriented problem files: one `[algebra]` block followed by any number of
//! `[bimodule NAME]` and `[module NAME]` blocks. See `docs/problem-format.md`.

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::monomial::{ModuleOrder, OrderSpec};
use crate::parse::{parse_polynomial_at, parse_relation_at, parse_vector_at, Definitions};
use crate::resolution::{LeftPresentation, PresentationForm};
use crate::vector::ModuleVector;

#[derive(Clone, Debug)]
pub struct BimoduleBlock {
    pub name: String,
    pub ambient: usize,
    pub generators: Vec<ModuleVector>,
    pub centralizing: bool,
}

#[derive(Clone, Debug)]
pub struct ModuleBlock {
    pub name: String,
    pub ambient: usize,
    pub form: PresentationForm,
    pub vectors: Vec<ModuleVector>,
}

impl ModuleBlock {
    pub fn presentation(&self) -> LeftPresentation {
        LeftPresentation { form: self.form, ambient: self.ambient, vectors: self.vectors.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub algebra: AlgebraSpec,
    pub module_order: ModuleOrder,
    pub definitions: Definitions,
    pub bimodules: Vec<BimoduleBlock>,
    pub modules: Vec<ModuleBlock>,
}

impl ProblemFile {
    pub fn bimodule(&self, name: &str) -> Option<&BimoduleBlock> {
        self.bimodules.iter().find(|b| b.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&ModuleBlock> {
        self.modules.iter().find(|b| b.name == name)
    }
}

/// One `key: value` line, with the 1-based position of the value.
#[derive(Clone, Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
struct Block {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |k| &line[..k])
}

fn split_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = strip_comment(raw);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(Error::parse(line, indent + 1, "unterminated block header"));
            };
            let mut words = inner.split_whitespace();
            let kind = words.next().unwrap_or_default().to_string();
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(Error::parse(line, indent + 1, "block header takes at most one name"));
            }
            match (kind.as_str(), &name) {
                ("algebra", None) | ("bimodule", Some(_)) | ("module", Some(_)) => {}
                ("algebra", Some(_)) => return Err(Error::parse(line, indent + 1, "`[algebra]` takes no name")),
                ("bimodule" | "module", None) => {
                    return Err(Error::parse(line, indent + 1, format!("`[{kind}]` needs a name")))
                }
                _ => return Err(Error::parse(line, indent + 1, format!("unknown block `[{kind}]`"))),
            }
            blocks.push(Block { kind, name, line, entries: Vec::new() });
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(Error::parse(line, indent + 1, "expected `key: value`"));
        };
        let key = content[..colon].trim().to_string();
        let after = &content[colon + 1..];
        let lead = after.chars().take_while(|c| c.is_whitespace()).count();
        let col = content[..colon + 1].chars().count() + lead + 1;
        let Some(block) = blocks.last_mut() else {
            return Err(Error::parse(line, indent + 1, "entry outside of any block"));
        };
        block.entries.push(Entry { key, value: after.trim().to_string(), line, col });
    }
    Ok(blocks)
}

fn list(e: &Entry) -> Vec<String> {
    e.value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_usize(e: &Entry) -> Result<usize> {
    e.value.parse().map_err(|_| Error::parse(e.line, e.col, format!("`{}` is not a non-negative integer", e.value)))
}

fn parse_bool(e: &Entry) -> Result<bool> {
    match e.value.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::parse(e.line, e.col, format!("expected `true` or `false`, found `{other}`"))),
    }
}

fn once<'a>(entries: &'a [Entry], key: &str) -> Result<Option<&'a Entry>> {
    let mut found = entries.iter().filter(|e| e.key == key);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(Error::parse(dup.line, 1, format!("duplicate `{key}`")));
    }
    Ok(first)
}

fn check_keys(b: &Block, allowed: &[&str]) -> Result<()> {
    match b.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
        Some(e) => Err(Error::parse(e.line, 1, format!("unknown key `{}` in `[{}]`", e.key, b.kind))),
        None => Ok(()),
    }
}

fn build_algebra(b: &Block) -> Result<(AlgebraSpec, ModuleOrder)> {
    check_keys(b, &["vars", "weights", "precedence", "relation", "module-order", "define"])?;
    let vars_entry = once(&b.entries, "vars")?.ok_or_else(|| Error::parse(b.line, 1, "`[algebra]` needs `vars:`"))?;
    let names = list(vars_entry);
    if names.is_empty() {
        return Err(Error::parse(vars_entry.line, vars_entry.col, "at least one variable is required"));
    }
    for (k, v) in names.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::parse(vars_entry.line, vars_entry.col, format!("`{v}` is not a valid variable name")));
        }
        if names[..k].contains(v) {
            return Err(Error::parse(vars_entry.line, vars_entry.col, format!("variable `{v}` declared twice")));
        }
    }
    let n = names.len();
    let weights = match once(&b.entries, "weights")? {
        Some(e) => {
            let ws: Vec<u32> = list(e)
                .iter()
                .map(|w| w.parse().map_err(|_| Error::parse(e.line, e.col, format!("`{w}` is not a positive integer weight"))))
                .collect::<Result<_>>()?;
            if ws.len() != n {
                return Err(Error::parse(e.line, e.col, format!("expected {n} weights, found {}", ws.len())));
            }
            ws
        }
        None => vec![1; n],
    };
    let precedence = match once(&b.entries, "precedence")? {
        Some(e) => list(e)
            .iter()
            .map(|v| {
                names.iter().position(|x| x == v).ok_or_else(|| Error::parse(e.line, e.col, format!("unknown variable `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?,
        None => (0..n).collect(),
    };
    let order = OrderSpec::new(weights, precedence).map_err(|err| Error::parse(b.line, 1, err.to_string()))?;
    let mut specs = Vec::new();
    for e in b.entries.iter().filter(|e| e.key == "relation") {
        specs.push(parse_relation_at(&e.value, &names, &order, e.line, e.col)?);
    }
    let scheme = match once(&b.entries, "module-order")? {
        None => ModuleOrder::top(order.clone()),
        Some(e) => match e.value.as_str() {
            "top" => ModuleOrder::top(order.clone()),
            "pot" => ModuleOrder::pot(order.clone()),
            other => return Err(Error::parse(e.line, e.col, format!("module order must be `top` or `pot`, found `{other}`"))),
        },
    };
    let alg = AlgebraSpec::construct(names, specs, order)?;
    Ok((alg, scheme))
}

fn define(e: &Entry, alg: &AlgebraSpec, defs: &mut Definitions) -> Result<()> {
    let Some(eq) = e.value.find('=') else {
        return Err(Error::parse(e.line, e.col, "expected `define: NAME = expression`"));
    };
    let name = e.value[..eq].trim().to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::parse(e.line, e.col, format!("`{name}` is not a valid name")));
    }
    if alg.var_index(&name).is_some() || defs.contains_key(&name) {
        return Err(Error::parse(e.line, e.col, format!("`{name}` is already defined")));
    }
    let rest = &e.value[eq + 1..];
    let lead = rest.chars().take_while(|c| c.is_whitespace()).count();
    let col = e.col + e.value[..eq + 1].chars().count() + lead;
    let p = parse_polynomial_at(rest.trim(), alg, defs, e.line, col)?;
    defs.insert(name, p);
    Ok(())
}

fn vectors(b: &Block, alg: &AlgebraSpec, defs: &Definitions, ambient: usize) -> Result<Vec<ModuleVector>> {
    b.entries
        .iter()
        .filter(|e| e.key == "gen")
        .map(|e| parse_vector_at(&e.value, alg, defs, Some(ambient), e.line, e.col))
        .collect()
}

fn ambient(b: &Block) -> Result<usize> {
    let e = once(&b.entries, "ambient")?.ok_or_else(|| Error::parse(b.line, 1, format!("`[{}]` needs `ambient:`", b.kind)))?;
    let m = parse_usize(e)?;
    if m == 0 {
        return Err(Error::parse(e.line, e.col, "ambient rank must be positive"));
    }
    Ok(m)
}

/// Parses only the `[algebra]` block, for commands that need nothing else.
pub fn parse_algebra(text: &str) -> Result<(AlgebraSpec, ModuleOrder)> {
    let blocks = split_blocks(text)?;
    let b = blocks
        .iter()
        .find(|b| b.kind == "algebra")
        .ok_or_else(|| Error::parse(1, 1, "missing `[algebra]` block"))?;
    build_algebra(b)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let blocks = split_blocks(text)?;
    let Some(first) = blocks.first() else {
        return Err(Error::parse(1, 1, "missing `[algebra]` block"));
    };
    if first.kind != "algebra" {
        return Err(Error::parse(first.line, 1, "the `[algebra]` block must come first"));
    }
    if let Some(b) = blocks[1..].iter().find(|b| b.kind == "algebra") {
        return Err(Error::parse(b.line, 1, "only one `[algebra]` block is allowed"));
    }
    let (algebra, module_order) = build_algebra(first)?;
    let mut defs = Definitions::new();
    let mut bimodules: Vec<BimoduleBlock> = Vec::new();
    let mut modules: Vec<ModuleBlock> = Vec::new();
    for b in &blocks {
        for e in b.entries.iter().filter(|e| e.key == "define") {
            define(e, &algebra, &mut defs)?;
        }
        let name = b.name.clone().unwrap_or_default();
        match b.kind.as_str() {
            "bimodule" => {
                check_keys(b, &["ambient", "centralizing", "gen", "define"])?;
                if bimodules.iter().any(|x| x.name == name) {
                    return Err(Error::parse(b.line, 1, format!("bimodule `{name}` defined twice")));
                }
                let m = ambient(b)?;
                let centralizing = once(&b.entries, "centralizing")?.map(parse_bool).transpose()?.unwrap_or(false);
                let generators = vectors(b, &algebra, &defs, m)?;
                bimodules.push(BimoduleBlock { name, ambient: m, generators, centralizing });
            }
            "module" => {
                check_keys(b, &["ambient", "form", "gen", "define"])?;
                if modules.iter().any(|x| x.name == name) {
                    return Err(Error::parse(b.line, 1, format!("module `{name}` defined twice")));
                }
                let s = ambient(b)?;
                let form = match once(&b.entries, "form")? {
                    None => PresentationForm::Generators,
                    Some(e) => match e.value.as_str() {
                        "generators" => PresentationForm::Generators,
                        "cokernel" => PresentationForm::Cokernel,
                        other => {
                            return Err(Error::parse(e.line, e.col, format!("form must be `generators` or `cokernel`, found `{other}`")))
                        }
                    },
                };
                let vectors = vectors(b, &algebra, &defs, s)?;
                modules.push(ModuleBlock { name, ambient: s, form, vectors });
            }
            _ => {}
        }
    }
    Ok(ProblemFile { algebra, module_order, definitions: defs, bimodules, modules })
}
