from .exporters import (
    basic_classes_frame,
    generate_certificate_report,
    matrix_frame,
    to_json,
    with_header,
    write,
)

__all__ = [
    'basic_classes_frame',
    'generate_certificate_report',
    'matrix_frame',
    'to_json',
    'with_header',
    'write',
]
