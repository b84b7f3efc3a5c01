import json


def success_record(data=None, success_message='Success', **kwargs):
    record = {'status': True, 'message': success_message, 'results': {}, 'additional_info': kwargs}
    if data is not None:
        record['results']['data'] = data
    return record


def error_record(errors={}, error_message='error', exception_info=None, **kwargs):
    return {'status': False, 'message': error_message, 'errors': errors, 'exception_info': exception_info, 'additional_info': kwargs}


def dump_record(record):
    """One JSON object per line, keys sorted so identical runs are byte-identical"""
    return json.dumps(record, sort_keys=True, allow_nan=False, separators=(', ', ': '))
