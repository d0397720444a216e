//! ANSI styling for terminal output. `DISPERSE_COLOR=0` turns it off, any
//! other value forces it on; unset, it follows whether stdout is a terminal.

use std::io::IsTerminal;

pub struct Style {
    enabled: bool,
}

impl Style {
    pub fn from_env() -> Self {
        let enabled = match std::env::var("DISPERSE_COLOR") {
            Ok(v) => v != "0",
            Err(_) => std::io::stdout().is_terminal(),
        };
        Style { enabled }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.enabled {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn bold(&self, text: &str) -> String {
        self.paint("1", text)
    }

    pub fn good(&self, text: &str) -> String {
        self.paint("32", text)
    }

    pub fn error(&self, text: &str) -> String {
        self.paint("1;31", text)
    }
}
