//! File formats and report rendering.

mod gen_format;
mod report;

pub use gen_format::{parse_generator, serialize_generator, EventEntry, GeneratorFile};
pub use report::{report_to_json, report_to_text, ReportFile};
