"""ReportLab rendering of task records for --format pdf."""
