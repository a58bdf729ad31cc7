//! Tweet cleaning, minority-class upsampling and back-translation
//! augmentation for the text side of the pipeline.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::LazyLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labelled text sample as stored in JSON Lines files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TextSample {
    pub sample_id: String,
    pub text: String,
    pub label: usize,
    #[serde(rename = "lang")]
    pub language: String,
}

static URL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"https?://\S*").unwrap());
static HANDLE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"@\w+").unwrap());
static PUNCT: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\p{P}").unwrap());

/// Inclusive code-point ranges stripped as emoji.
pub const EMOJI_RANGES: [(u32, u32); 5] = [
    (0x1F300, 0x1FAFF),
    (0x2600, 0x27BF),
    (0xFE0F, 0xFE0F),
    (0x200D, 0x200D),
    (0x1F1E6, 0x1F1FF),
];

pub fn is_emoji(c: char) -> bool {
    let c = c as u32;
    EMOJI_RANGES.iter().any(|&(lo, hi)| (lo..=hi).contains(&c))
}

fn is_punctuation(c: char) -> bool {
    if c.is_ascii() {
        return c.is_ascii_punctuation();
    }
    let mut buf = [0u8; 4];
    PUNCT.is_match(c.encode_utf8(&mut buf))
}

/// Strips URLs, `@handles`, emoji and punctuation, then collapses
/// whitespace. Apostrophes and hyphens survive only between two
/// alphanumeric characters; hashtags keep their text.
pub fn clean_text(raw: &str) -> String {
    let text = URL.replace_all(raw, "");
    let text = HANDLE.replace_all(&text, "");
    let chars: Vec<char> = text.chars().filter(|&c| !is_emoji(c)).collect();

    let mut kept = String::with_capacity(chars.len());
    for (i, &c) in chars.iter().enumerate() {
        if !is_punctuation(c) {
            kept.push(c);
            continue;
        }
        if c == '\'' || c == '-' {
            let before = i.checked_sub(1).map(|j| chars[j]);
            let after = chars.get(i + 1).copied();
            if before.is_some_and(char::is_alphanumeric) && after.is_some_and(char::is_alphanumeric) {
                kept.push(c);
            }
        }
    }
    kept.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn clean_samples(samples: &[TextSample]) -> Vec<TextSample> {
    samples
        .iter()
        .map(|s| TextSample {
            text: clean_text(&s.text),
            ..s.clone()
        })
        .collect()
}

/// Pads every minority class up to the majority count by seeded sampling
/// with replacement from its own members. Originals come first, in input
/// order, followed by the duplicates grouped by class.
pub fn upsample(samples: &[TextSample], seed: u64) -> Result<Vec<TextSample>> {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in samples.iter().enumerate() {
        by_class.entry(s.label).or_default().push(i);
    }
    let Some(&top) = by_class.keys().next_back() else {
        return Err(Error::EmptyClass(0));
    };
    if let Some(missing) = (0..=top).find(|k| !by_class.contains_key(k)) {
        return Err(Error::EmptyClass(missing));
    }
    let majority = by_class.values().map(Vec::len).max().unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = samples.to_vec();
    for members in by_class.values() {
        for n in 0..majority - members.len() {
            let src = &samples[members[rng.random_range(0..members.len())]];
            out.push(TextSample {
                sample_id: format!("{}#up{}", src.sample_id, n + 1),
                ..src.clone()
            });
        }
    }
    Ok(out)
}

/// Translates text between languages.
pub trait Translator {
    fn translate(&self, text: &str, source: &str, target: &str) -> std::result::Result<String, String>;
}

/// Returns the input unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityTranslator;

impl Translator for IdentityTranslator {
    fn translate(&self, text: &str, _source: &str, _target: &str) -> std::result::Result<String, String> {
        Ok(text.to_string())
    }
}

impl<F> Translator for F
where
    F: Fn(&str, &str, &str) -> std::result::Result<String, String>,
{
    fn translate(&self, text: &str, source: &str, target: &str) -> std::result::Result<String, String> {
        self(text, source, target)
    }
}

/// Appends a translated copy of every `source_lang` sample.
pub fn augment_backtranslate(
    samples: &[TextSample],
    translator: &dyn Translator,
    source_lang: &str,
    target_lang: &str,
) -> Result<Vec<TextSample>> {
    let mut out = samples.to_vec();
    for s in samples.iter().filter(|s| s.language == source_lang) {
        let text = translator
            .translate(&s.text, source_lang, target_lang)
            .map_err(|message| Error::Translation {
                sample_id: s.sample_id.clone(),
                message,
            })?;
        out.push(TextSample {
            sample_id: format!("{}#bt-{}", s.sample_id, target_lang),
            text,
            label: s.label,
            language: target_lang.to_string(),
        });
    }
    Ok(out)
}

pub fn read_samples(path: impl AsRef<Path>) -> Result<Vec<TextSample>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let sample: TextSample = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, n as u64 + 1, e.to_string()))?;
        if sample.sample_id.is_empty() {
            return Err(Error::parse(path, n as u64 + 1, "empty sample_id"));
        }
        out.push(sample);
    }
    Ok(out)
}

pub fn write_samples(samples: &[TextSample], path: impl AsRef<Path>) -> Result<()> {
    let mut text = String::new();
    for s in samples {
        text.push_str(&serde_json::to_string(s).expect("sample serializes"));
        text.push('\n');
    }
    crate::scoreio::write_file(path.as_ref(), text.as_bytes())
}
