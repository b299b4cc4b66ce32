//! Key/value reports with a human-readable and a machine-readable rendering.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Kv,
}

#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn add(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn print(&self, format: Format) {
        for (key, value) in &self.entries {
            match format {
                Format::Human => println!("{key} = {value}"),
                Format::Kv => println!("{key}={value}"),
            }
        }
    }
}
