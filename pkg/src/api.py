import logging
import os
from flask import Flask, request, jsonify

from config import get_config

from .commands import COMMANDS, CommandOptions, run_command
from .errors import BudgetExceeded, InvalidInputError
from .logging_config import setup_logging

logger = logging.getLogger(__name__)

app = Flask(__name__)
app.config.from_object(get_config())

# Initialize logging
setup_logging(app, log_dir=app.config['LOG_DIR'])

CONTAINER_VERSION = os.environ.get("APP_VERSION", "N/A (Untagged)")


@app.before_request
def log_request_and_auth():
    logger.info(f"{request.method} {request.path}")
    expected = get_config().api_key()
    if not expected or request.path == '/health':
        return None
    key = request.headers.get(app.config['API_KEY_HEADER'])
    if not key or key != expected:
        logger.warning("Rejected request to %s: bad or missing API key", request.path)
        return jsonify({'success': False, 'error': 'Unauthorized Access', 'error_type': 'unauthorized'}), 401


@app.after_request
def log_response(response):
    logger.info(f"Response: {response.status_code} for {request.method} {request.path}")
    return response


@app.route('/health', methods=['GET'])
def health_check():
    return jsonify({'status': 'healthy',
                    'message': f'ffframes API is running (Version: {CONTAINER_VERSION})'}), 200


@app.route('/commands', methods=['GET'])
def list_commands():
    names = sorted(COMMANDS)
    return jsonify({'success': True, 'count': len(names), 'commands': names}), 200


@app.route('/<command>', methods=['POST'])
def command_endpoint(command):
    if command not in COMMANDS:
        return jsonify({'success': False, 'error': 'Endpoint not found', 'error_type': 'not_found'}), 404
    try:
        data = request.get_json(silent=True)
        if not isinstance(data, dict):
            raise InvalidInputError('Request body must be a JSON object')

        options = CommandOptions.from_dict(data.get('options'))
        if command == 'search':
            cfg = get_config()
            options.budget = options.budget if options.budget is not None else cfg.search_budget()
        payload = {key: data[key] for key in ('input', 'other') if key in data}
        result = run_command(command, payload, options)

        return jsonify({'success': True, 'holds': result.holds, 'data': result.report}), 200

    except BudgetExceeded as e:
        logger.warning('Budget exceeded for %s: %s', command, str(e))
        return jsonify({'success': False, 'error': str(e), 'error_type': 'budget_exceeded'}), 400
    except InvalidInputError as e:
        logger.warning('Invalid input for %s: %s', command, str(e))
        return jsonify({'success': False, 'error': str(e), 'error_type': 'invalid_input'}), 400
    except Exception as e:
        logger.exception('Unexpected error while running %s', command)
        return jsonify({'success': False, 'error': str(e), 'error_type': 'server_error'}), 500


@app.errorhandler(404)
def not_found(error):
    return jsonify({'success': False, 'error': 'Endpoint not found', 'error_type': 'not_found'}), 404


@app.errorhandler(405)
def method_not_allowed(error):
    return jsonify({'success': False, 'error': 'Method not allowed', 'error_type': 'method_not_allowed'}), 405
